//! Declarative infeasibility: forbidden interval patterns plus two built-in
//! rules.
//!
//! Constraints name atoms, not positions, so one declaration answers for
//! every operand ordering. A position resolves to an atom when the operand
//! there is atomic; patterns and rules only look at resolved atoms.

use std::collections::{BTreeMap, BTreeSet};

use crate::combo::IntervalCombo;
use crate::error::{Error, Result};
use crate::feasibility::IndexTuple;
use crate::model::{EventStarId, Oie, Shape};
use crate::time::{Interval, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// No two of these atoms may overlap (touching is allowed).
    NoOverlap(BTreeSet<EventStarId>),
    /// Any two of these atoms must be at least `gap` apart.
    MinGap {
        ids: BTreeSet<EventStarId>,
        gap: Rational,
    },
}

impl Rule {
    fn ids(&self) -> &BTreeSet<EventStarId> {
        match self {
            Rule::NoOverlap(ids) | Rule::MinGap { ids, .. } => ids,
        }
    }

    fn pair_ok(&self, a: &Interval, b: &Interval) -> bool {
        match self {
            Rule::NoOverlap(_) => !a.overlaps(b),
            Rule::MinGap { gap, .. } => !a.overlaps(b) && a.gap_to(b) >= *gap,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    forbidden: Vec<BTreeMap<EventStarId, Interval>>,
    rules: Vec<Rule>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        ConstraintSet::default()
    }

    pub fn is_empty(&self) -> bool {
        self.forbidden.is_empty() && self.rules.is_empty()
    }

    /// Forbids the atoms in `pattern` from taking exactly these intervals
    /// together. A pattern may mention any subset of the atoms.
    pub fn forbid(&mut self, pattern: BTreeMap<EventStarId, Interval>) -> Result<()> {
        if pattern.is_empty() {
            return Err(Error::invalid(
                "an empty forbidden pattern would forbid everything",
            ));
        }
        if !self.forbidden.contains(&pattern) {
            self.forbidden.push(pattern);
        }
        Ok(())
    }

    /// Forbids a combo written in the operands' own order. Every operand must
    /// be atomic.
    pub fn forbid_combo(&mut self, operands: &[Oie], combo: &IntervalCombo) -> Result<()> {
        if operands.len() != combo.len() {
            return Err(Error::invalid(format!(
                "pattern {combo} has {} intervals for {} operands",
                combo.len(),
                operands.len()
            )));
        }
        let mut pattern = BTreeMap::new();
        for (o, iv) in operands.iter().zip(combo.iter()) {
            if o.shape() != Shape::Atomic {
                return Err(Error::invalid(format!(
                    "patterns can only name atomic operands, `{}` is not",
                    o.label()
                )));
            }
            let atom = o
                .atoms()
                .iter()
                .next()
                .expect("atomic has one atom")
                .clone();
            pattern.insert(atom, *iv);
        }
        self.forbid(pattern)
    }

    pub fn add_rule(&mut self, rule: Rule) -> Result<()> {
        let n = rule.ids().len();
        if n < 2 {
            return Err(Error::invalid(format!(
                "a rule needs at least two ids, got {n}"
            )));
        }
        if let Rule::MinGap { gap, .. } = &rule {
            if *gap < Rational::from_integer(0) {
                return Err(Error::invalid("min_gap must not be negative"));
            }
        }
        self.rules.push(rule);
        Ok(())
    }

    pub fn forbidden(&self) -> &[BTreeMap<EventStarId, Interval>] {
        &self.forbidden
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Every atom the constraints mention.
    pub fn referenced_atoms(&self) -> BTreeSet<&EventStarId> {
        self.forbidden
            .iter()
            .flat_map(|p| p.keys())
            .chain(self.rules.iter().flat_map(|r| r.ids()))
            .collect()
    }

    /// Resolves atoms to positions for operands arranged by `idx`.
    pub(crate) fn bind<'a>(&'a self, events: &[Oie], idx: &IndexTuple) -> Bound<'a> {
        let mut position = BTreeMap::new();
        for (k, &source) in idx.positions().iter().enumerate() {
            let o = &events[source];
            if o.shape() == Shape::Atomic {
                let atom = o.atoms().iter().next().expect("atomic has one atom");
                position.insert(atom.clone(), k);
            }
        }
        Bound { cs: self, position }
    }
}

pub(crate) struct Bound<'a> {
    cs: &'a ConstraintSet,
    position: BTreeMap<EventStarId, usize>,
}

impl Bound<'_> {
    pub(crate) fn is_trivial(&self) -> bool {
        self.cs.is_empty()
    }

    pub(crate) fn is_infeasible(&self, combo: &IntervalCombo) -> bool {
        let items = combo.items();
        let matches = |pattern: &BTreeMap<EventStarId, Interval>| {
            pattern
                .iter()
                .all(|(id, iv)| self.position.get(id).is_some_and(|&k| items[k] == *iv))
        };
        if self.cs.forbidden.iter().any(matches) {
            return true;
        }
        self.cs.rules.iter().any(|rule| {
            let resolved: Vec<&Interval> = rule
                .ids()
                .iter()
                .filter_map(|id| self.position.get(id).map(|&k| &items[k]))
                .collect();
            resolved
                .iter()
                .enumerate()
                .any(|(i, a)| resolved[i + 1..].iter().any(|b| !rule.pair_ok(a, b)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_atomic;

    fn atoms() -> Vec<Oie> {
        vec![
            make_atomic("p".into(), [Interval::of(0, 2), Interval::of(3, 4)]).unwrap(),
            make_atomic("q".into(), [Interval::of(1, 3), Interval::of(5, 6)]).unwrap(),
        ]
    }

    #[test]
    fn pattern_follows_the_atom_under_reordering() {
        let ev = atoms();
        let mut cs = ConstraintSet::new();
        cs.forbid_combo(&ev, &IntervalCombo::of(&[(0, 2), (5, 6)]))
            .unwrap();
        let fwd = cs.bind(&ev, &IndexTuple::ascending(2));
        assert!(fwd.is_infeasible(&IntervalCombo::of(&[(0, 2), (5, 6)])));
        assert!(!fwd.is_infeasible(&IntervalCombo::of(&[(3, 4), (5, 6)])));
        let rev = cs.bind(&ev, &IndexTuple::from_one_based(&[2, 1]).unwrap());
        assert!(rev.is_infeasible(&IntervalCombo::of(&[(5, 6), (0, 2)])));
        assert!(!rev.is_infeasible(&IntervalCombo::of(&[(0, 2), (5, 6)])));
    }

    #[test]
    fn rules() {
        let ev = atoms();
        let mut cs = ConstraintSet::new();
        cs.add_rule(Rule::NoOverlap(["p".into(), "q".into()].into()))
            .unwrap();
        let b = cs.bind(&ev, &IndexTuple::ascending(2));
        assert!(b.is_infeasible(&IntervalCombo::of(&[(0, 2), (1, 3)])));
        assert!(!b.is_infeasible(&IntervalCombo::of(&[(3, 4), (1, 3)])));

        let mut cs = ConstraintSet::new();
        cs.add_rule(Rule::MinGap {
            ids: ["p".into(), "q".into()].into(),
            gap: Rational::from_integer(2),
        })
        .unwrap();
        let b = cs.bind(&ev, &IndexTuple::ascending(2));
        assert!(b.is_infeasible(&IntervalCombo::of(&[(3, 4), (1, 3)])));
        assert!(b.is_infeasible(&IntervalCombo::of(&[(3, 4), (5, 6)])));
        assert!(!b.is_infeasible(&IntervalCombo::of(&[(0, 2), (5, 6)])));
        assert!(cs.add_rule(Rule::NoOverlap(["p".into()].into())).is_err());
    }

    #[test]
    fn partial_pattern_needs_every_named_atom_present() {
        let ev = atoms();
        let mut cs = ConstraintSet::new();
        cs.forbid(BTreeMap::from([
            ("p".into(), Interval::of(0, 2)),
            ("zz".into(), Interval::of(0, 1)),
        ]))
        .unwrap();
        let b = cs.bind(&ev, &IndexTuple::ascending(2));
        assert!(!b.is_infeasible(&IntervalCombo::of(&[(0, 2), (1, 3)])));
    }
}
