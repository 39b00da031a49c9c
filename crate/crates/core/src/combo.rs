//! Combos (one interval per operand position), combo sets and the
//! permutations that act on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::time::{Interval, Timestamp};

/// One candidate joint schedule: the interval picked for each position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalCombo(Vec<Interval>);

impl IntervalCombo {
    pub fn new(items: Vec<Interval>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::invalid("a combo needs at least one interval"));
        }
        Ok(IntervalCombo(items))
    }

    /// Panicking constructor for literals: `IntervalCombo::of(&[(0, 1), (21, 22)])`.
    pub fn of(pairs: &[(i128, i128)]) -> Self {
        IntervalCombo::new(pairs.iter().map(|&(s, e)| Interval::of(s, e)).collect())
            .expect("literal combo must be non-empty")
    }

    pub fn single(iv: Interval) -> Self {
        IntervalCombo(vec![iv])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn items(&self) -> &[Interval] {
        &self.0
    }

    pub fn get(&self, k: usize) -> Option<&Interval> {
        self.0.get(k)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.0.iter()
    }
}

impl TryFrom<Vec<Interval>> for IntervalCombo {
    type Error = Error;
    fn try_from(v: Vec<Interval>) -> Result<Self> {
        IntervalCombo::new(v)
    }
}

impl From<IntervalCombo> for Vec<Interval> {
    fn from(c: IntervalCombo) -> Self {
        c.0
    }
}

impl fmt::Display for IntervalCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, iv) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{iv}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for IntervalCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// (min start, max end) over the combo.
pub fn bound_combo(combo: &[Interval]) -> Result<Interval> {
    let lo = min_first(combo)?;
    let hi = max_second(combo)?;
    Interval::new(lo, hi)
}

pub fn min_first(combo: &[Interval]) -> Result<Timestamp> {
    combo
        .iter()
        .map(Interval::start)
        .min()
        .ok_or_else(|| Error::invalid("bound of an empty combo"))
}

pub fn max_second(combo: &[Interval]) -> Result<Timestamp> {
    combo
        .iter()
        .map(Interval::end)
        .max()
        .ok_or_else(|| Error::invalid("bound of an empty combo"))
}

impl IntervalCombo {
    pub fn bound(&self) -> Interval {
        bound_combo(&self.0).expect("combos are never empty")
    }
}

/// A finite set of equal-length combos, iterated in lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComboSet {
    combos: BTreeSet<IntervalCombo>,
}

impl ComboSet {
    pub fn new() -> Self {
        ComboSet::default()
    }

    pub fn from_combos(combos: impl IntoIterator<Item = IntervalCombo>) -> Result<Self> {
        let mut set = ComboSet::new();
        for c in combos {
            set.insert(c)?;
        }
        Ok(set)
    }

    /// Inserts a combo, rejecting one whose length differs from the members'.
    pub fn insert(&mut self, combo: IntervalCombo) -> Result<bool> {
        if let Some(n) = self.arity() {
            if combo.len() != n {
                return Err(Error::invalid(format!(
                    "combo {combo} has length {}, the set holds length {n}",
                    combo.len()
                )));
            }
        }
        Ok(self.combos.insert(combo))
    }

    /// The uniform combo length; `None` for the empty set.
    pub fn arity(&self) -> Option<usize> {
        self.combos.first().map(IntervalCombo::len)
    }

    pub fn len(&self) -> usize {
        self.combos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combos.is_empty()
    }

    pub fn contains(&self, combo: &IntervalCombo) -> bool {
        self.combos.contains(combo)
    }

    pub fn iter(&self) -> std::collections::btree_set::Iter<'_, IntervalCombo> {
        self.combos.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<IntervalCombo> {
        &self.combos
    }

    /// Keeps the combos satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&IntervalCombo) -> bool) -> ComboSet {
        ComboSet {
            combos: self.combos.iter().filter(|c| keep(c)).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &ComboSet) -> ComboSet {
        ComboSet {
            combos: self.combos.difference(&other.combos).cloned().collect(),
        }
    }

    /// Applies `p` to every member.
    pub fn permuted(&self, p: &PermutationMap) -> Result<ComboSet> {
        let combos = self
            .combos
            .iter()
            .map(|c| apply_permutation(c, p))
            .collect::<Result<_>>()?;
        Ok(ComboSet { combos })
    }
}

impl<'a> IntoIterator for &'a ComboSet {
    type Item = &'a IntervalCombo;
    type IntoIter = std::collections::btree_set::Iter<'a, IntervalCombo>;
    fn into_iter(self) -> Self::IntoIter {
        self.combos.iter()
    }
}

impl fmt::Debug for ComboSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.combos.iter()).finish()
    }
}

impl Serialize for ComboSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.combos.iter())
    }
}

impl<'de> Deserialize<'de> for ComboSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let combos = Vec::<IntervalCombo>::deserialize(d)?;
        ComboSet::from_combos(combos).map_err(serde::de::Error::custom)
    }
}

/// A bijection on positions, stored 0-based as the image of each position.
///
/// Acting on a combo moves the member at position `i` to position `p(i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationMap {
    images: Vec<usize>,
}

impl PermutationMap {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(PermutationMap { images })
    }

    /// Builds from 1-based images, the form used in text.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::invalid("1-based permutation contains 0"));
        }
        PermutationMap::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        PermutationMap {
            images: (0..n).collect(),
        }
    }

    /// Transposition of 0-based positions `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = PermutationMap::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        PermutationMap { images: inv }
    }

    /// `self` after `first`: position `i` goes to `self(first(i))`.
    pub fn after(&self, first: &PermutationMap) -> Result<Self> {
        if self.len() != first.len() {
            return Err(Error::invalid("composing permutations of different sizes"));
        }
        Ok(PermutationMap {
            images: first.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Moves `items[i]` to position `p(i)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.len() {
            return Err(Error::invalid(format!(
                "permutation of size {} applied to {} items",
                self.len(),
                items.len()
            )));
        }
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, item) in items.iter().enumerate() {
            out[self.images[i]] = Some(item.clone());
        }
        Ok(out
            .into_iter()
            .map(|x| x.expect("bijection fills every slot"))
            .collect())
    }
}

impl fmt::Display for PermutationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PermutationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn apply_permutation(combo: &IntervalCombo, p: &PermutationMap) -> Result<IntervalCombo> {
    p.permute(combo.items()).map(IntervalCombo)
}

/// Finds a permutation carrying `a` onto `b`, choosing the lexicographically
/// smallest image vector when several exist.
pub fn combo_perm_equivalent(a: &IntervalCombo, b: &IntervalCombo) -> Option<PermutationMap> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut images = Vec::with_capacity(a.len());
    for iv in a.iter() {
        let j = (0..b.len()).find(|&j| !used[j] && b.0[j] == *iv)?;
        used[j] = true;
        images.push(j);
    }
    Some(PermutationMap { images })
}
