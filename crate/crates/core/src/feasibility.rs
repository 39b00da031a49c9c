//! Index tuples, the ordered Cartesian product of interval families, and the
//! feasible/infeasible split of that product.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::combo::{ComboSet, IntervalCombo, PermutationMap};
use crate::config::{Config, Limits};
use crate::constraints::ConstraintSet;
use crate::error::{Error, Result};
use crate::model::{intervals_family, Oie};
use crate::time::Interval;

/// An arrangement of operands: position `k` holds operand `positions[k]`
/// (0-based internally, 1-based in text).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple {
    positions: Vec<usize>,
}

impl IndexTuple {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::invalid("an index tuple needs at least one index"));
        }
        PermutationMap::new(positions.clone())?;
        Ok(IndexTuple { positions })
    }

    pub fn from_one_based(indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::invalid("index tuples count from 1"));
        }
        IndexTuple::new(indices.iter().map(|i| i - 1).collect())
    }

    /// `(1, 2, ..., n)`.
    pub fn ascending(n: usize) -> Self {
        IndexTuple {
            positions: (0..n).collect(),
        }
    }

    /// All `n!` tuples in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = IndexTuple> {
        (0..n)
            .permutations(n)
            .map(|positions| IndexTuple { positions })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Picks the operands in this order.
    pub fn arrange<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        self.check_len(items.len())?;
        Ok(self.positions.iter().map(|&i| items[i].clone()).collect())
    }

    /// The permutation `M` carrying a combo laid out by `self` onto the same
    /// schedule laid out by `other`.
    pub fn relating(&self, other: &IndexTuple) -> Result<PermutationMap> {
        if self.len() != other.len() {
            return Err(Error::invalid("index tuples of different lengths"));
        }
        let mut slot_in_other = vec![0; other.len()];
        for (k, &operand) in other.positions.iter().enumerate() {
            slot_in_other[operand] = k;
        }
        PermutationMap::new(self.positions.iter().map(|&o| slot_in_other[o]).collect())
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if n != self.len() {
            return Err(Error::invalid(format!(
                "index tuple of length {} used with {n} operands",
                self.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of combos the product would hold, or a capacity error.
pub fn product_size(sizes: impl IntoIterator<Item = usize>, limits: &Limits) -> Result<u128> {
    let mut total: u128 = 1;
    for s in sizes {
        total = total.saturating_mul(s as u128);
    }
    if total > limits.max_product {
        return Err(Error::CapacityExceeded {
            what: "cartesian product",
            needed: total,
            limit: limits.max_product,
        });
    }
    Ok(total)
}

/// Product where position `k` draws from `family[idx(k)]`.
pub fn cartesian_by_index(
    family: &[BTreeSet<Interval>],
    idx: &IndexTuple,
    limits: &Limits,
) -> Result<ComboSet> {
    let factors = idx.arrange(family)?;
    if factors.iter().any(BTreeSet::is_empty) {
        return Ok(ComboSet::new());
    }
    product_size(factors.iter().map(BTreeSet::len), limits)?;
    let combos = factors
        .iter()
        .map(|f| f.iter().copied())
        .multi_cartesian_product()
        .map(|items| IntervalCombo::new(items).expect("product rows are non-empty"));
    ComboSet::from_combos(combos)
}

/// Splits the product into (feasible, infeasible).
pub fn partition_combos(
    events: &[Oie],
    idx: &IndexTuple,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<(ComboSet, ComboSet)> {
    let all = cartesian_by_index(&intervals_family(events), idx, &config.limits)?;
    let bound = cs.bind(events, idx);
    if bound.is_trivial() {
        return Ok((all, ComboSet::new()));
    }
    let infeasible = all.filtered(|c| bound.is_infeasible(c));
    let feasible = all.difference(&infeasible);
    Ok((feasible, infeasible))
}

pub fn infeasible_combos(
    events: &[Oie],
    idx: &IndexTuple,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<ComboSet> {
    partition_combos(events, idx, cs, config).map(|(_, bad)| bad)
}

pub fn feasible_combos(
    events: &[Oie],
    idx: &IndexTuple,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<ComboSet> {
    partition_combos(events, idx, cs, config).map(|(good, _)| good)
}

/// True when no combination of the events' intervals is ruled out.
pub fn is_mutually_independent(
    events: &[Oie],
    cs: &ConstraintSet,
    config: &Config,
) -> Result<bool> {
    if let Some(v) = events.iter().position(Oie::is_void) {
        return Err(Error::invalid(format!("operand {} is void", v + 1)));
    }
    if events.is_empty() {
        return Err(Error::invalid("no events given"));
    }
    let bad = infeasible_combos(events, &IndexTuple::ascending(events.len()), cs, config)?;
    Ok(bad.is_empty())
}
