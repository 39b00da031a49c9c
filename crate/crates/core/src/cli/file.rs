//! Event files and expression evaluation against them.
//!
//! ```json
//! {
//!   "format": 1,
//!   "events": [{"id": "a", "intervals": [[0, 1], [21, 22]]}],
//!   "constraints": [
//!     {"forbidden": {"a": [0, 1], "b": [0, 1]}},
//!     {"no_overlap": ["a", "b"]},
//!     {"min_gap": ["a", "b"], "gap": "1/2"}
//!   ],
//!   "expression": "add(a, b; alpha=0, beta=22)",
//!   "metadata": {"note": "free text"}
//! }
//! ```
//!
//! An event with no intervals stands for the void value.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::expr::{parse_expression, Expr};
use crate::config::Config;
use crate::constraints::{ConstraintSet, Rule};
use crate::error::{Error, Result};
use crate::feasibility::IndexTuple;
use crate::model::{make_atomic, void_oie, EventStarId, Oie};
use crate::ops::{csa_traced, csm_traced, natural_csa_traced, DomainWindow, Traced, VoidCause};
use crate::time::{deserialize_rational, serialize_rational, Interval, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventFile {
    pub format: u32,
    pub events: Vec<EventSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventSpec {
    pub id: String,
    pub intervals: Vec<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConstraintSpec {
    Forbidden(ForbiddenSpec),
    NoOverlap(NoOverlapSpec),
    MinGap(MinGapSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForbiddenSpec {
    pub forbidden: BTreeMap<String, Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoOverlapSpec {
    pub no_overlap: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinGapSpec {
    pub min_gap: Vec<String>,
    #[serde(
        serialize_with = "serialize_rational",
        deserialize_with = "deserialize_rational"
    )]
    pub gap: Rational,
}

impl ConstraintSpec {
    pub fn forbidden<'a>(pairs: impl IntoIterator<Item = (&'a str, Interval)>) -> Self {
        ConstraintSpec::Forbidden(ForbiddenSpec {
            forbidden: pairs
                .into_iter()
                .map(|(id, iv)| (id.to_string(), iv))
                .collect(),
        })
    }

    pub fn no_overlap<'a>(ids: impl IntoIterator<Item = &'a str>) -> Self {
        ConstraintSpec::NoOverlap(NoOverlapSpec {
            no_overlap: ids.into_iter().map(str::to_string).collect(),
        })
    }

    fn ids(&self) -> Vec<&String> {
        match self {
            ConstraintSpec::Forbidden(f) => f.forbidden.keys().collect(),
            ConstraintSpec::NoOverlap(n) => n.no_overlap.iter().collect(),
            ConstraintSpec::MinGap(g) => g.min_gap.iter().collect(),
        }
    }
}

impl EventFile {
    pub fn new(events: Vec<EventSpec>) -> Self {
        EventFile {
            format: FORMAT_VERSION,
            events,
            constraints: Vec::new(),
            expression: None,
            metadata: BTreeMap::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("event file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        EventFile::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("event files always serialize");
        s.push('\n');
        s
    }

    /// Checks the file and builds its OIEs and constraints.
    pub fn compile(&self) -> Result<Workspace> {
        if self.format != FORMAT_VERSION {
            return Err(Error::invalid(format!(
                "unsupported format {}, expected {FORMAT_VERSION}",
                self.format
            )));
        }
        let mut events = BTreeMap::new();
        let mut order = Vec::new();
        for spec in &self.events {
            let atom = EventStarId::new(spec.id.clone())?;
            if events.contains_key(&spec.id) {
                return Err(Error::invalid(format!(
                    "event id `{}` is used twice",
                    spec.id
                )));
            }
            let oie = if spec.intervals.is_empty() {
                void_oie()
            } else {
                make_atomic(atom, spec.intervals.iter().copied())?
            };
            events.insert(spec.id.clone(), oie);
            order.push(spec.id.clone());
        }
        let mut constraints = ConstraintSet::new();
        for (k, c) in self.constraints.iter().enumerate() {
            if let Some(id) = c.ids().into_iter().find(|id| !events.contains_key(*id)) {
                return Err(Error::invalid(format!(
                    "constraint {} names unknown event `{id}`",
                    k + 1
                )));
            }
            let atoms = |ids: &[String]| -> Result<BTreeSet<EventStarId>> {
                let set: BTreeSet<EventStarId> = ids
                    .iter()
                    .map(|i| EventStarId::new(i.clone()))
                    .collect::<Result<_>>()?;
                if set.len() != ids.len() {
                    return Err(Error::invalid(format!(
                        "constraint {} repeats an id",
                        k + 1
                    )));
                }
                Ok(set)
            };
            match c {
                ConstraintSpec::Forbidden(f) => constraints.forbid(
                    f.forbidden
                        .iter()
                        .map(|(id, iv)| Ok((EventStarId::new(id.clone())?, *iv)))
                        .collect::<Result<_>>()?,
                )?,
                ConstraintSpec::NoOverlap(n) => {
                    constraints.add_rule(Rule::NoOverlap(atoms(&n.no_overlap)?))?
                }
                ConstraintSpec::MinGap(g) => constraints.add_rule(Rule::MinGap {
                    ids: atoms(&g.min_gap)?,
                    gap: g.gap,
                })?,
            }
        }
        let expression = self
            .expression
            .as_deref()
            .map(parse_expression)
            .transpose()?;
        if let Some(e) = &expression {
            if let Some(id) = e.idents().into_iter().find(|id| !events.contains_key(*id)) {
                return Err(Error::UnknownIdentifier(id.to_string()));
            }
        }
        Ok(Workspace {
            events,
            order,
            constraints,
            expression,
        })
    }
}

/// A compiled event file.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub events: BTreeMap<String, Oie>,
    /// Event ids in file order.
    pub order: Vec<String>,
    pub constraints: ConstraintSet,
    pub expression: Option<Expr>,
}

impl Workspace {
    pub fn event(&self, id: &str) -> Result<&Oie> {
        self.events
            .get(id)
            .ok_or_else(|| Error::UnknownIdentifier(id.to_string()))
    }

    pub fn evaluate(&self, e: &Expr, config: &Config) -> Result<Traced> {
        evaluate(e, self, config)
    }

    /// Evaluates the file's own expression.
    pub fn evaluate_main(&self, config: &Config) -> Result<Traced> {
        let e = self
            .expression
            .as_ref()
            .ok_or_else(|| Error::invalid("the file has no expression; pass one explicitly"))?;
        evaluate(e, self, config)
    }
}

/// Bottom-up evaluation; each node's operands keep their written order.
pub fn evaluate(e: &Expr, ws: &Workspace, config: &Config) -> Result<Traced> {
    let children = match e {
        Expr::Ident(id) => {
            let result = ws.event(id)?.clone();
            let cause = result.is_void().then(|| VoidCause {
                step: 1,
                reason: format!("event `{id}` has no intervals"),
            });
            return Ok(Traced { result, cause });
        }
        _ => e.children(),
    };
    let operands = children
        .iter()
        .map(|c| evaluate(c, ws, config).map(|t| t.result))
        .collect::<Result<Vec<Oie>>>()?;
    let idx = IndexTuple::ascending(operands.len());
    let cs = &ws.constraints;
    match e {
        Expr::Add { alpha, beta, .. } => {
            let w = DomainWindow::new(*alpha, *beta)?;
            csa_traced(&operands, &idx, &w, cs, config)
        }
        Expr::Mul(_) => csm_traced(&operands, &idx, cs, config),
        Expr::NatAdd(_) => {
            if let Some(k) = operands.iter().position(Oie::is_void) {
                return Ok(Traced {
                    result: void_oie(),
                    cause: Some(VoidCause {
                        step: 1,
                        reason: format!("operand {} is void", k + 1),
                    }),
                });
            }
            natural_csa_traced(&operands, &idx, cs, config)
        }
        Expr::Ident(_) => unreachable!("handled above"),
    }
}
