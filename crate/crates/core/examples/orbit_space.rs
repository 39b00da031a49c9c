//! Reordering the operands of an addition changes nothing but the layout;
//! reordering a multiplication can change the plan itself.
//!
//! cargo run --example orbit_space

use oie::{
    csm, make_atomic, oie_perm_equivalent, orbit_space, Config, ConstraintSet, DomainWindow,
    IndexTuple, Interval, Operation,
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
    let events = [a, b];
    let cs = ConstraintSet::new();
    let config = Config::default();

    let add = orbit_space(
        &events,
        &Operation::Add(DomainWindow::new(0, 22)?),
        &cs,
        &config,
    )?;
    println!(
        "addition: {} class over {} orderings",
        add.len(),
        add.classes[0].index_tuples.len()
    );

    let mul = orbit_space(&events, &Operation::Mul, &cs, &config)?;
    println!("multiplication: {} classes", mul.len());
    for class in &mul.classes {
        println!(
            "  {:?} -> I = {:?}",
            class.index_tuples,
            class.representative.intervals()
        );
    }

    let ab = csm(&events, &IndexTuple::ascending(2), &cs, &config)?;
    let ba = csm(&events, &IndexTuple::from_one_based(&[2, 1])?, &cs, &config)?;
    println!(
        "A then B equivalent to B then A: {}",
        oie_perm_equivalent(&ab, &ba).is_some()
    );
    Ok(())
}
