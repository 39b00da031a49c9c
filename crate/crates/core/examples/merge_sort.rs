//! Plans the merges of a parallel merge sort: merges in one layer share a
//! window, layers run one after another.
//!
//! cargo run --example merge_sort -- 16 4

use oie::analysis::implement_nested;
use oie::cli::scenario::scenario_mergesort;
use oie::Config;

fn main() -> oie::Result<()> {
    let mut args = std::env::args().skip(1);
    let len = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);
    let procs = args.next().and_then(|s| s.parse().ok());
    let config = Config::default();

    let plan = scenario_mergesort(len, procs, &config.limits)?;
    println!("{} items on {} processors", plan.len, plan.procs);
    for layer in &plan.layers {
        println!(
            "  depth {}: {} merge(s) of cost {}, {} round(s), window {:?}",
            layer.depth,
            layer.tasks.len(),
            layer.cost,
            layer.batches,
            layer.window
        );
    }
    println!(
        "expression: {}",
        plan.file.expression.as_deref().unwrap_or("")
    );

    let result = plan.file.compile()?.evaluate_main(&config)?.result;
    let first = result
        .details()
        .iter()
        .next()
        .expect("the plan is feasible");
    for (task, slot) in implement_nested(&result, first)? {
        println!("  {task}: {slot:?}");
    }
    Ok(())
}
