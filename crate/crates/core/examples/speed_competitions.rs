//! A sprint where every athlete may run at any time inside the race window,
//! and a downhill where skiers start one after another. The winner's time is
//! a min over the operands, so every end-time ordering gives the same answer.
//!
//! cargo run --example speed_competitions

use std::collections::BTreeMap;

use oie::cli::scenario::{scenario_downhill, scenario_sprint};
use oie::{fold_projection, project_end_ts, Config, DomainWindow, Rational, Reducer, Timestamp};

fn main() -> oie::Result<()> {
    let config = Config::default();
    let r = Rational::from_integer;

    let sprint = scenario_sprint(
        3,
        DomainWindow::new(0, 4)?,
        r(2),
        r(4),
        r(1),
        &config.limits,
    )?;
    let race = sprint.compile()?.evaluate_main(&config)?.result;
    let orderings = project_end_ts(&race)?;
    println!(
        "sprint: {} schedules, {} finishing orders",
        race.details().len(),
        orderings.len()
    );

    let times = BTreeMap::from([
        ("athlete1".to_string(), "9.58".parse::<Timestamp>()?.value()),
        ("athlete2".to_string(), "9.91".parse::<Timestamp>()?.value()),
        (
            "athlete3".to_string(),
            "10.01".parse::<Timestamp>()?.value(),
        ),
    ]);
    let best = fold_projection(&orderings, &times, Reducer::Min)?;
    println!("winning time: {}", Timestamp::new(best));

    let downhill = scenario_downhill(
        2,
        Timestamp::from_int(0),
        r(6),
        r(2),
        r(3),
        r(1),
        &config.limits,
    )?;
    let run = downhill.compile()?.evaluate_main(&config)?.result;
    println!(
        "downhill: {} schedules, finishing orders {:?}",
        run.details().len(),
        project_end_ts(&run)?.len()
    );

    let too_slow = scenario_downhill(
        2,
        Timestamp::from_int(0),
        r(6),
        r(7),
        r(8),
        r(1),
        &config.limits,
    )?;
    println!(
        "nobody fits: {}",
        too_slow
            .compile()?
            .evaluate_main(&config)?
            .cause
            .expect("void")
    );
    Ok(())
}
