//! Three doctors each submit a paper at one of a few hours of the day.
//! Plans any two of them side by side within the day and inspects the result.
//!
//! cargo run --example doctors

use oie::analysis::implement_second;
use oie::{
    csa, derive_intervals, is_mutually_independent, make_atomic, validate_oie, Config,
    ConstraintSet, DomainWindow, IndexTuple, Interval, IntervalCombo,
};

fn main() -> oie::Result<()> {
    let a = make_atomic("Dr_A".into(), [Interval::of(0, 1), Interval::of(21, 22)])?;
    let b = make_atomic(
        "Dr_B".into(),
        [
            Interval::of(0, 1),
            Interval::of(13, 14),
            Interval::of(20, 22),
        ],
    )?;
    let c = make_atomic("Dr_C".into(), [Interval::of(0, 1), Interval::of(19, 22)])?;

    let config = Config::default();
    let day = DomainWindow::new(0, 22)?;
    let b_and_a = csa(
        &[b.clone(), a.clone()],
        &IndexTuple::ascending(2),
        &day,
        &ConstraintSet::new(),
        &config,
    )?;

    println!("C = {}", b_and_a.label());
    for combo in b_and_a.details() {
        println!("  {combo}  bound {}", combo.bound());
    }
    println!("I = {:?}", b_and_a.intervals());
    assert_eq!(&derive_intervals(b_and_a.details()), b_and_a.intervals());
    assert!(validate_oie(&b_and_a).is_valid());

    let plan = implement_second(&b_and_a, &IntervalCombo::of(&[(13, 14), (21, 22)]))?;
    println!("one concrete plan: {plan}");

    // The three may not all submit in the first hour, nor all in the evening.
    let trio = [a.clone(), b.clone(), c.clone()];
    let mut cs = ConstraintSet::new();
    cs.forbid_combo(&trio, &IntervalCombo::of(&[(21, 22), (20, 22), (19, 22)]))?;
    cs.forbid_combo(&trio, &IntervalCombo::of(&[(0, 1), (0, 1), (0, 1)]))?;
    println!(
        "all three independent: {}",
        is_mutually_independent(&trio, &cs, &config)?
    );
    println!(
        "A and B independent:   {}",
        is_mutually_independent(&[a, b], &cs, &config)?
    );
    Ok(())
}
