//! Text and JSON renderings of results.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::model::{Oie, Shape};
use crate::ops::{Traced, VoidCause};

/// ```text
/// C: (Dr_B, Dr_A)
/// F: {
///   ((0, 1), (0, 1))
/// }
/// I: {(0, 1)}
/// A: {Dr_A, Dr_B}
/// ```
pub fn render_oie(o: &Oie) -> String {
    if o.is_void() {
        return "VOID\n".to_string();
    }
    let mut out = String::new();
    let c = match o.shape() {
        Shape::Atomic => "()".to_string(),
        _ => o.label(),
    };
    let _ = writeln!(out, "C: {c}");
    out.push_str("F: {\n");
    for combo in o.details() {
        let _ = writeln!(out, "  {combo}");
    }
    out.push_str("}\n");
    let intervals: Vec<String> = o.intervals().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "I: {{{}}}", intervals.join(", "));
    let atoms: Vec<String> = o.atoms().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "A: {{{}}}", atoms.join(", "));
    out
}

pub fn render_traced(t: &Traced) -> String {
    match &t.cause {
        Some(cause) => format!("VOID ({cause})\n"),
        None => render_oie(&t.result),
    }
}

/// JSON shape of an evaluation result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub format: u32,
    pub result: Oie,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub void_step: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub void_reason: Option<String>,
}

impl ResultDocument {
    pub fn new(t: &Traced) -> Self {
        ResultDocument {
            format: super::file::FORMAT_VERSION,
            result: t.result.clone(),
            void_step: t.cause.as_ref().map(|c| c.step),
            void_reason: t.cause.as_ref().map(|c| c.reason.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("results always serialize");
        s.push('\n');
        s
    }

    pub fn traced(&self) -> Traced {
        Traced {
            result: self.result.clone(),
            cause: self.void_step.map(|step| VoidCause {
                step,
                reason: self.void_reason.clone().unwrap_or_default(),
            }),
        }
    }
}
