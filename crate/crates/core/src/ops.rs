//! The domain and ascending filters, and the operations built on them:
//! complete sequential addition (`csa`), its natural-window form, and
//! complete sequential multiplication (`csm`).

use std::collections::BTreeSet;
use std::fmt;

use crate::combo::ComboSet;
use crate::config::{Config, IntersectionRule};
use crate::constraints::ConstraintSet;
use crate::error::{Error, Result};
use crate::feasibility::{feasible_combos, IndexTuple};
use crate::model::{void_oie, EventStarId, Oie};
use crate::time::Timestamp;

/// The `(alpha, beta)` window of sequential addition, `alpha < beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DomainWindow {
    alpha: Timestamp,
    beta: Timestamp,
}

impl DomainWindow {
    pub fn new(alpha: impl Into<Timestamp>, beta: impl Into<Timestamp>) -> Result<Self> {
        let (alpha, beta) = (alpha.into(), beta.into());
        if alpha >= beta {
            return Err(Error::invalid(format!(
                "window needs alpha < beta, got ({alpha}, {beta})"
            )));
        }
        Ok(DomainWindow { alpha, beta })
    }

    pub fn alpha(&self) -> Timestamp {
        self.alpha
    }

    pub fn beta(&self) -> Timestamp {
        self.beta
    }
}

impl fmt::Display for DomainWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.alpha, self.beta)
    }
}

/// Combos inside the window, kept only if every position starts at `alpha`
/// in some kept combo and ends at `beta` in some kept combo.
pub fn domain_filtered_subset(cs: &ComboSet, w: &DomainWindow) -> Result<ComboSet> {
    let n = cs
        .arity()
        .ok_or_else(|| Error::invalid("domain filter of an empty combo set"))?;
    let inside = cs.filtered(|c| {
        c.iter()
            .all(|iv| iv.start() >= w.alpha && iv.end() <= w.beta)
    });
    let touches = |k: usize| {
        inside.iter().any(|c| c.items()[k].start() == w.alpha)
            && inside.iter().any(|c| c.items()[k].end() == w.beta)
    };
    if (0..n).all(touches) {
        Ok(inside)
    } else {
        Ok(ComboSet::new())
    }
}

/// Combos whose every earlier interval ends no later than every later one
/// starts.
pub fn asc_order_filtered_subset(cs: &ComboSet) -> Result<ComboSet> {
    if cs.is_empty() {
        return Err(Error::invalid("ascending filter of an empty combo set"));
    }
    Ok(cs.filtered(|c| {
        let items = c.items();
        (0..items.len()).all(|i| (i + 1..items.len()).all(|j| items[i].end() <= items[j].start()))
    }))
}

/// Why an operation returned the void value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoidCause {
    /// 1: void operand or shared atom, 2: nothing feasible, 3: filter emptied F.
    pub step: u8,
    pub reason: String,
}

impl fmt::Display for VoidCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

/// An operation result together with the cause when it is void.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub result: Oie,
    pub cause: Option<VoidCause>,
}

impl Traced {
    fn void(step: u8, reason: impl Into<String>) -> Self {
        Traced {
            result: void_oie(),
            cause: Some(VoidCause {
                step,
                reason: reason.into(),
            }),
        }
    }
}

pub fn csa(
    events: &[Oie],
    idx: &IndexTuple,
    w: &DomainWindow,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<Oie> {
    csa_traced(events, idx, w, cs, config).map(|t| t.result)
}

pub fn csa_traced(
    events: &[Oie],
    idx: &IndexTuple,
    w: &DomainWindow,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<Traced> {
    sequential(events, idx, cs, config, |f| {
        let kept = domain_filtered_subset(f, w)?;
        Ok((
            kept,
            format!("no schedule touches both ends of window {w} at every position"),
        ))
    })
}

pub fn csm(events: &[Oie], idx: &IndexTuple, cs: &ConstraintSet, config: &Config) -> Result<Oie> {
    csm_traced(events, idx, cs, config).map(|t| t.result)
}

pub fn csm_traced(
    events: &[Oie],
    idx: &IndexTuple,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<Traced> {
    sequential(events, idx, cs, config, |f| {
        let kept = asc_order_filtered_subset(f)?;
        Ok((
            kept,
            "no feasible schedule runs the operands in order".to_string(),
        ))
    })
}

/// The window shared by all operands: their common earliest start and
/// latest end.
pub fn natural_window(events: &[Oie]) -> Result<DomainWindow> {
    let mut shared: Option<(Timestamp, Timestamp)> = None;
    for (k, o) in events.iter().enumerate() {
        let (Some(lo), Some(hi)) = (
            o.intervals().iter().map(|iv| iv.start()).min(),
            o.intervals().iter().map(|iv| iv.end()).max(),
        ) else {
            return Err(Error::PreconditionViolated(format!(
                "operand {} is void",
                k + 1
            )));
        };
        match shared {
            None => shared = Some((lo, hi)),
            Some(s) if s == (lo, hi) => {}
            Some((a, b)) => {
                return Err(Error::PreconditionViolated(format!(
                    "operand {} spans [{lo}, {hi}], operand 1 spans [{a}, {b}]",
                    k + 1
                )))
            }
        }
    }
    let (a, b) = shared.ok_or_else(|| Error::invalid("no operands"))?;
    DomainWindow::new(a, b)
}

pub fn natural_csa(
    events: &[Oie],
    idx: &IndexTuple,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<Oie> {
    natural_csa_traced(events, idx, cs, config).map(|t| t.result)
}

pub fn natural_csa_traced(
    events: &[Oie],
    idx: &IndexTuple,
    cs: &ConstraintSet,
    config: &Config,
) -> Result<Traced> {
    idx.check_len(events.len())?;
    let w = natural_window(events)?;
    csa_traced(events, idx, &w, cs, config)
}

fn sequential(
    events: &[Oie],
    idx: &IndexTuple,
    cs: &ConstraintSet,
    config: &Config,
    filter: impl FnOnce(&ComboSet) -> Result<(ComboSet, String)>,
) -> Result<Traced> {
    let operands = idx.arrange(events)?;
    if operands.len() < 2 {
        return Err(Error::invalid(format!(
            "sequential operations take at least two operands, got {}",
            operands.len()
        )));
    }
    if let Some(k) = operands.iter().position(Oie::is_void) {
        return Ok(Traced::void(1, format!("operand {} is void", k + 1)));
    }
    if let Some(atom) = shared_atom(&operands, config.intersection) {
        return Ok(Traced::void(1, format!("atom {atom} is planned twice")));
    }
    let feasible = feasible_combos(events, idx, cs, config)?;
    if feasible.is_empty() {
        return Ok(Traced::void(2, "every combination is infeasible"));
    }
    let (details, why) = filter(&feasible)?;
    if details.is_empty() {
        return Ok(Traced::void(3, why));
    }
    Ok(Traced {
        result: Oie::composite(operands, details)?,
        cause: None,
    })
}

fn shared_atom(operands: &[Oie], rule: IntersectionRule) -> Option<EventStarId> {
    match rule {
        IntersectionRule::Pairwise => {
            let mut seen = BTreeSet::new();
            operands
                .iter()
                .flat_map(|o| o.atoms().iter())
                .find(|a| !seen.insert(*a))
                .cloned()
        }
        IntersectionRule::Aggregate => {
            let (first, rest) = operands.split_first()?;
            first
                .atoms()
                .iter()
                .find(|a| rest.iter().all(|o| o.atoms().contains(*a)))
                .cloned()
        }
    }
}
