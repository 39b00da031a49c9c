//! Drawers take balls from an urn without replacement, in the order their
//! slots end. Under addition every drawer is equally likely to draw in any
//! position; either way the chance of red is the same for each drawer.
//!
//! cargo run --example sampling -- 5 3 3

use oie::cli::scenario::scenario_sampling;
use oie::{Config, Rational};

fn main() -> oie::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (balls, red, drawers) = match args[..] {
        [n, m, k] => (n, m, k),
        _ => (3, 2, 2),
    };
    let report = scenario_sampling(
        balls,
        red,
        drawers,
        Rational::from_integer(1),
        &Config::default(),
    )?;
    print!("{report}");
    println!(
        "positions balanced under addition: {}",
        report.add_is_symmetric()
    );
    Ok(())
}
