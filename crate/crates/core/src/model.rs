//! The OIE 4-tuple: components, schedule details `F`, overall intervals `I`
//! and atom set `A`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combo::{ComboSet, IntervalCombo};
use crate::error::{Error, Result};
use crate::time::Interval;

/// Identity of an indivisible real-world event.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct EventStarId(String);

impl EventStarId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::invalid("event ids must be non-empty"));
        }
        Ok(EventStarId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for EventStarId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        EventStarId::new(s)
    }
}

impl From<EventStarId> for String {
    fn from(id: EventStarId) -> Self {
        id.0
    }
}

impl From<&str> for EventStarId {
    /// Panics on the empty string.
    fn from(s: &str) -> Self {
        EventStarId::new(s).expect("event id literal must be non-empty")
    }
}

impl fmt::Display for EventStarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EventStarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Void,
    Atomic,
    Composite,
    Malformed,
}

/// Optional intervals event. Equality is structural and order-sensitive in
/// the components.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Oie {
    components: Vec<Oie>,
    details: ComboSet,
    intervals: BTreeSet<Interval>,
    atoms: BTreeSet<EventStarId>,
}

impl Oie {
    /// Assembles a tuple without checking it; see [`validate_oie`].
    pub fn from_parts(
        components: Vec<Oie>,
        details: ComboSet,
        intervals: BTreeSet<Interval>,
        atoms: BTreeSet<EventStarId>,
    ) -> Self {
        Oie {
            components,
            details,
            intervals,
            atoms,
        }
    }

    /// A composite over `components`, with `I` and `A` derived.
    pub fn composite(components: Vec<Oie>, details: ComboSet) -> Result<Self> {
        let n = components.len();
        if n < 2 {
            return Err(Error::invalid(format!(
                "a composite needs at least two components, got {n}"
            )));
        }
        if let Some(len) = details.arity() {
            if len != n {
                return Err(Error::invalid(format!(
                    "combos of length {len} for {n} components"
                )));
            }
        }
        let atoms = components
            .iter()
            .flat_map(|c| c.atoms.iter().cloned())
            .collect();
        let intervals = derive_intervals(&details);
        Ok(Oie {
            components,
            details,
            intervals,
            atoms,
        })
    }

    pub fn components(&self) -> &[Oie] {
        &self.components
    }

    pub fn details(&self) -> &ComboSet {
        &self.details
    }

    pub fn intervals(&self) -> &BTreeSet<Interval> {
        &self.intervals
    }

    pub fn atoms(&self) -> &BTreeSet<EventStarId> {
        &self.atoms
    }

    pub fn is_void(&self) -> bool {
        self.shape() == Shape::Void
    }

    pub fn shape(&self) -> Shape {
        let c = self.components.len();
        if c == 0 && self.details.is_empty() && self.intervals.is_empty() && self.atoms.is_empty() {
            Shape::Void
        } else if c == 0 && self.atoms.len() == 1 && self.details.arity().unwrap_or(1) == 1 {
            Shape::Atomic
        } else if c > 1 && self.details.arity().unwrap_or(c) == c {
            Shape::Composite
        } else {
            Shape::Malformed
        }
    }

    /// Atom id for atomic values, parenthesised component labels for
    /// composites, `VOID` for the void value.
    pub fn label(&self) -> String {
        match self.shape() {
            Shape::Void => "VOID".to_string(),
            Shape::Atomic => self
                .atoms
                .iter()
                .next()
                .map(|a| a.to_string())
                .unwrap_or_default(),
            _ => {
                let inner: Vec<String> = self.components.iter().map(Oie::label).collect();
                format!("({})", inner.join(", "))
            }
        }
    }
}

impl fmt::Debug for Oie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return f.write_str("Oie::VOID");
        }
        f.debug_struct("Oie")
            .field("C", &self.label())
            .field("F", &self.details)
            .field("I", &self.intervals)
            .field("A", &self.atoms)
            .finish()
    }
}

/// An atomic OIE whose schedules are the given intervals.
pub fn make_atomic(
    atom: EventStarId,
    intervals: impl IntoIterator<Item = Interval>,
) -> Result<Oie> {
    let intervals: BTreeSet<Interval> = intervals.into_iter().collect();
    if intervals.is_empty() {
        return Err(Error::invalid(format!(
            "atomic event {atom} has no intervals; use the void value instead"
        )));
    }
    let details = ComboSet::from_combos(intervals.iter().copied().map(IntervalCombo::single))?;
    Ok(Oie {
        components: Vec::new(),
        details,
        intervals,
        atoms: BTreeSet::from([atom]),
    })
}

pub fn void_oie() -> Oie {
    Oie {
        components: Vec::new(),
        details: ComboSet::new(),
        intervals: BTreeSet::new(),
        atoms: BTreeSet::new(),
    }
}

pub fn derive_intervals(details: &ComboSet) -> BTreeSet<Interval> {
    details.iter().map(IntervalCombo::bound).collect()
}

pub fn oie_equal(a: &Oie, b: &Oie) -> bool {
    a == b
}

pub fn intervals_family(events: &[Oie]) -> Vec<BTreeSet<Interval>> {
    events.iter().map(|e| e.intervals.clone()).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for v in &self.violations {
            writeln!(f, "invalid: {v}")?;
        }
        Ok(())
    }
}

pub fn validate_oie(o: &Oie) -> ValidationReport {
    let mut report = ValidationReport::default();
    check(o, "", &mut report.violations);
    report
}

fn check(o: &Oie, path: &str, out: &mut Vec<String>) {
    let at = |msg: String| {
        if path.is_empty() {
            msg
        } else {
            format!("component {path}: {msg}")
        }
    };
    let c = o.components.len();
    match o.shape() {
        Shape::Void | Shape::Atomic => {}
        Shape::Composite => {
            let union: BTreeSet<EventStarId> = o
                .components
                .iter()
                .flat_map(|x| x.atoms.iter().cloned())
                .collect();
            if union != o.atoms {
                out.push(at("A is not the union of the components' atoms".into()));
            }
            for (k, comp) in o.components.iter().enumerate() {
                let sub = if path.is_empty() {
                    (k + 1).to_string()
                } else {
                    format!("{path}.{}", k + 1)
                };
                check(comp, &sub, out);
            }
        }
        Shape::Malformed => {
            if c == 1 {
                out.push(at(
                    "exactly one component: neither atomic nor composite".into()
                ));
            } else if c == 0 {
                if o.atoms.len() != 1 {
                    out.push(at(format!(
                        "no components, so atomic, but has {} atoms instead of 1",
                        o.atoms.len()
                    )));
                }
                if let Some(len) = o.details.arity().filter(|&l| l != 1) {
                    out.push(at(format!("atomic OIE with combos of length {len}")));
                }
            } else if let Some(len) = o.details.arity() {
                out.push(at(format!(
                    "combo length {len} does not match {c} components"
                )));
            }
        }
    }
    if derive_intervals(&o.details) != o.intervals {
        out.push(at("I differs from the bounds derived from F".into()));
    }
}
