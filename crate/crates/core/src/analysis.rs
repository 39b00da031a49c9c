//! Permutational equivalence, orbit spaces, implementations of a planned
//! OIE, and the end-timestamp projection onto operand orderings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::combo::{apply_permutation, ComboSet, IntervalCombo, PermutationMap};
use crate::config::Config;
use crate::constraints::ConstraintSet;
use crate::error::{Error, Result};
use crate::feasibility::IndexTuple;
use crate::model::{Oie, Shape};
use crate::ops::{csa, csm, natural_csa, DomainWindow};
use crate::time::{format_rational, Interval, Rational};

/// Finds `M` with `C(a)·M = C(b)` and `F(a)·M = F(b)`, given `I(a) = I(b)`
/// and `A(a) = A(b)`. Picks the lexicographically smallest such `M`.
pub fn oie_perm_equivalent(a: &Oie, b: &Oie) -> Option<PermutationMap> {
    match (a.shape(), b.shape()) {
        (Shape::Void, Shape::Void) => return Some(PermutationMap::identity(0)),
        (Shape::Void, _) | (_, Shape::Void) => return None,
        _ => {}
    }
    if a.intervals() != b.intervals()
        || a.atoms() != b.atoms()
        || a.details().len() != b.details().len()
    {
        return None;
    }
    let n = a.components().len();
    if n != b.components().len() {
        return None;
    }
    if n == 0 {
        return (a == b).then(|| PermutationMap::identity(1));
    }
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(a, b, &mut images, &mut used)
}

fn search(a: &Oie, b: &Oie, images: &mut Vec<usize>, used: &mut [bool]) -> Option<PermutationMap> {
    let i = images.len();
    if i == used.len() {
        let m = PermutationMap::new(images.clone()).expect("search builds bijections");
        return details_match(a.details(), b.details(), &m).then_some(m);
    }
    for j in 0..used.len() {
        if used[j] || a.components()[i] != b.components()[j] {
            continue;
        }
        used[j] = true;
        images.push(j);
        if let Some(m) = search(a, b, images, used) {
            return Some(m);
        }
        images.pop();
        used[j] = false;
    }
    None
}

fn details_match(fa: &ComboSet, fb: &ComboSet, m: &PermutationMap) -> bool {
    fa.iter()
        .all(|c| apply_permutation(c, m).is_ok_and(|moved| fb.contains(&moved)))
}

/// Which operation an orbit is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Add(DomainWindow),
    NaturalAdd,
    Mul,
}

impl Operation {
    pub fn apply(
        &self,
        events: &[Oie],
        idx: &IndexTuple,
        cs: &ConstraintSet,
        config: &Config,
    ) -> Result<Oie> {
        match self {
            Operation::Add(w) => csa(events, idx, w, cs, config),
            Operation::NaturalAdd => natural_csa(events, idx, cs, config),
            Operation::Mul => csm(events, idx, cs, config),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    /// The result under the first index tuple of the class.
    pub representative: Oie,
    /// Members in lexicographic order.
    pub index_tuples: Vec<IndexTuple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpace {
    pub classes: Vec<OrbitClass>,
}

impl OrbitSpace {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Evaluates `op` under all `n!` index tuples and groups the results by
/// permutational equivalence.
pub fn orbit_space(
    events: &[Oie],
    op: &Operation,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<OrbitSpace> {
    let n = events.len();
    if n > config.limits.orbit_cap {
        return Err(Error::CapacityExceeded {
            what: "orbit enumeration operands",
            needed: n as u128,
            limit: config.limits.orbit_cap as u128,
        });
    }
    let mut classes: Vec<OrbitClass> = Vec::new();
    for idx in IndexTuple::all(n) {
        let result = op.apply(events, &idx, cs, config)?;
        match classes
            .iter_mut()
            .find(|c| oie_perm_equivalent(&c.representative, &result).is_some())
        {
            Some(class) => class.index_tuples.push(idx),
            None => classes.push(OrbitClass {
                representative: result,
                index_tuples: vec![idx],
            }),
        }
    }
    Ok(OrbitSpace { classes })
}

/// A concrete choice out of a planned OIE.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleAssignment {
    pub overall: Interval,
    /// Empty for a first-type implementation.
    pub per_operand: Vec<(String, Interval)>,
}

impl fmt::Display for ScheduleAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "overall {}", self.overall)?;
        for (label, iv) in &self.per_operand {
            write!(f, "\n  {label}: {iv:?}")?;
        }
        Ok(())
    }
}

/// Commits only to an overall interval from `I`.
pub fn implement_first(o: &Oie, chosen: &Interval) -> Result<ScheduleAssignment> {
    if o.is_void() {
        return Err(Error::invalid("the void value has nothing to implement"));
    }
    if !o.intervals().contains(chosen) {
        return Err(Error::InvalidChoice(format!("{chosen} is not in I")));
    }
    Ok(ScheduleAssignment {
        overall: *chosen,
        per_operand: Vec::new(),
    })
}

/// Commits to one combo from `F`, fixing every operand's interval.
pub fn implement_second(o: &Oie, chosen: &IntervalCombo) -> Result<ScheduleAssignment> {
    if o.is_void() {
        return Err(Error::invalid("the void value has nothing to implement"));
    }
    if !o.details().contains(chosen) {
        return Err(Error::InvalidChoice(format!("{chosen} is not in F")));
    }
    let labels: Vec<String> = match o.shape() {
        Shape::Atomic => vec![o.label()],
        _ => o.components().iter().map(Oie::label).collect(),
    };
    Ok(ScheduleAssignment {
        overall: chosen.bound(),
        per_operand: labels.into_iter().zip(chosen.iter().copied()).collect(),
    })
}

/// Like [`implement_second`], but descends into composite components until
/// every atom has an interval. A component given interval `iv` is
/// implemented by its first combo whose bound is `iv`.
pub fn implement_nested(o: &Oie, chosen: &IntervalCombo) -> Result<Vec<(String, Interval)>> {
    implement_second(o, chosen)?;
    let mut out = Vec::new();
    if o.shape() == Shape::Atomic {
        out.push((o.label(), chosen.items()[0]));
        return Ok(out);
    }
    for (comp, iv) in o.components().iter().zip(chosen.iter()) {
        if comp.shape() == Shape::Atomic {
            out.push((comp.label(), *iv));
            continue;
        }
        let sub = comp
            .details()
            .iter()
            .find(|c| c.bound() == *iv)
            .ok_or_else(|| Error::InvalidChoice(format!("{iv} is not in I of {}", comp.label())))?;
        out.extend(implement_nested(comp, sub)?);
    }
    Ok(out)
}

/// Component positions of one combo sorted by end time.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OperandOrdering {
    /// 0-based component positions, earliest end first.
    pub positions: Vec<usize>,
    pub ordering: Vec<String>,
    /// The first combo in `F` realising this ordering.
    pub source_combo: IntervalCombo,
}

impl fmt::Display for OperandOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.ordering.join(", "))
    }
}

/// Distinct orderings of the components by ascending end time over every
/// combo of `F`; equal ends keep component order.
pub fn project_end_ts(o: &Oie) -> Result<Vec<OperandOrdering>> {
    if o.shape() != Shape::Composite {
        return Err(Error::invalid(format!(
            "projection needs a composite OIE, got {}",
            o.label()
        )));
    }
    let labels: Vec<String> = o.components().iter().map(Oie::label).collect();
    let mut seen: BTreeMap<Vec<usize>, OperandOrdering> = BTreeMap::new();
    for combo in o.details() {
        let mut positions: Vec<usize> = (0..combo.len()).collect();
        positions.sort_by_key(|&k| combo.items()[k].end());
        seen.entry(positions.clone())
            .or_insert_with(|| OperandOrdering {
                ordering: positions.iter().map(|&k| labels[k].clone()).collect(),
                positions,
                source_combo: combo.clone(),
            });
    }
    Ok(seen.into_values().collect())
}

/// Permutation-invariant reducers accepted by [`fold_projection`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reducer {
    Min,
    Max,
    Sum,
}

impl Reducer {
    fn fold(&self, values: impl Iterator<Item = Rational>) -> Option<Rational> {
        values.reduce(|x, y| match self {
            Reducer::Min => x.min(y),
            Reducer::Max => x.max(y),
            Reducer::Sum => x + y,
        })
    }
}

impl FromStr for Reducer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Reducer::Min),
            "max" => Ok(Reducer::Max),
            "sum" => Ok(Reducer::Sum),
            "first" | "last" | "sub" | "div" => Err(Error::Unsupported(format!(
                "`{s}` depends on operand order; use min, max or sum"
            ))),
            _ => Err(Error::invalid(format!("unknown reducer `{s}`"))),
        }
    }
}

/// Reduces the operand values along each ordering and checks that every
/// ordering gives the same number.
pub fn fold_projection(
    orderings: &[OperandOrdering],
    values: &BTreeMap<String, Rational>,
    reducer: Reducer,
) -> Result<Rational> {
    let mut agreed: Option<Rational> = None;
    for o in orderings {
        let vals = o
            .ordering
            .iter()
            .map(|label| {
                values
                    .get(label)
                    .copied()
                    .ok_or_else(|| Error::invalid(format!("no value for `{label}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let v = reducer
            .fold(vals.into_iter())
            .ok_or_else(|| Error::invalid("ordering with no operands"))?;
        match agreed {
            None => agreed = Some(v),
            Some(prev) if prev == v => {}
            Some(prev) => {
                return Err(Error::PreconditionViolated(format!(
                    "orderings disagree: {} vs {}",
                    format_rational(&prev),
                    format_rational(&v)
                )))
            }
        }
    }
    agreed.ok_or_else(|| Error::invalid("no orderings to fold"))
}

/// Labels of every ordering, for quick comparisons.
pub fn ordering_labels(orderings: &[OperandOrdering]) -> BTreeSet<Vec<String>> {
    orderings.iter().map(|o| o.ordering.clone()).collect()
}
