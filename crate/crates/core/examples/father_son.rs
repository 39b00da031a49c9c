//! Lifespans of a father and a son across three eras. Only combinations in
//! the same era are feasible; the split follows the operands when they are
//! listed the other way round.
//!
//! cargo run --example father_son

use std::path::Path;

use oie::cli::file::EventFile;
use oie::combo::apply_permutation;
use oie::feasibility::partition_combos;
use oie::{Config, IndexTuple};

fn main() -> oie::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/father_son.json");
    let ws = EventFile::load(&path)?.compile()?;
    let events = [ws.event("father")?.clone(), ws.event("son")?.clone()];
    let config = Config::default();

    let forward = IndexTuple::from_one_based(&[1, 2])?;
    let backward = IndexTuple::from_one_based(&[2, 1])?;
    let (feasible, infeasible) = partition_combos(&events, &forward, &ws.constraints, &config)?;
    println!(
        "(father, son): {} feasible, {} infeasible",
        feasible.len(),
        infeasible.len()
    );
    for combo in &feasible {
        println!("  {combo}");
    }

    let (feasible_rev, _) = partition_combos(&events, &backward, &ws.constraints, &config)?;
    let swap = forward.relating(&backward)?;
    for combo in &feasible {
        assert!(feasible_rev.contains(&apply_permutation(combo, &swap)?));
    }
    println!(
        "(son, father): the same {} schedules, swapped by {swap}",
        feasible_rev.len()
    );
    Ok(())
}
