//! The Cayley table of cumulative addition over n atoms, and its diagram.
//!
//! cargo run --example cayley_diagram -- 3 > full_csa.dot

use oie::{cayley_table, emit_full_csa_diagram, Layout, Limits};

fn main() -> oie::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let table = cayley_table(n, &Limits::default())?;
    eprint!("{table}");
    eprintln!(
        "{} elements, {} non-absorbing pairs",
        table.size(),
        table.product_edges().len()
    );
    print!("{}", emit_full_csa_diagram(&table, Layout::Circular));
    Ok(())
}
