//! Generators for the worked scenarios: sprint, downhill, parallel merge
//! sort and drawer sampling. Continuous time is discretised on a `tick` grid.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use super::expr::parse_expression;
use super::file::{ConstraintSpec, EventFile, EventSpec};
use crate::config::{Config, Limits};
use crate::error::{Error, Result};
use crate::feasibility::product_size;
use crate::model::Oie;
use crate::ops::DomainWindow;
use crate::time::{format_rational, Interval, Rational, Timestamp};

/// Reference constants of the full-scale races, kept in file metadata.
pub const SPRINT_REFERENCE_WINDOW: (i128, i128) = (1_736_253_600, 1_736_253_620);
pub const SPRINT_REFERENCE_DURATIONS: (&str, &str) = ("9.4", "20");
pub const DOWNHILL_REFERENCE_START: i128 = 1_736_253_600;
pub const DOWNHILL_REFERENCE_TOTAL: i128 = 1_200;
pub const DOWNHILL_REFERENCE_DURATIONS: (i128, i128) = (90, 120);

fn on_grid(x: Rational, tick: Rational) -> bool {
    (x / tick).is_integer()
}

fn check_grid(tick: Rational, named: &[(&str, Rational)]) -> Result<()> {
    if tick <= Rational::from_integer(0) {
        return Err(Error::invalid("tick must be positive"));
    }
    for (name, v) in named {
        if !on_grid(*v, tick) {
            return Err(Error::invalid(format!(
                "{name} = {} is not a multiple of tick {}",
                format_rational(v),
                format_rational(&tick)
            )));
        }
    }
    Ok(())
}

/// Every `[s, s + d)` inside `[lo, hi]` with `s` and `d` on the tick grid
/// from `lo`, `dmin <= d <= dmax`.
pub fn grid_intervals(
    lo: Timestamp,
    hi: Timestamp,
    dmin: Rational,
    dmax: Rational,
    tick: Rational,
) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut d = dmin;
    while d <= dmax {
        let mut s = lo;
        while s + d <= hi {
            out.push(Interval::new(s, s + d).expect("durations are positive"));
            s = s + tick;
        }
        d += tick;
    }
    out
}

fn call(op: &str, ids: &[String], tail: &str) -> String {
    if ids.len() == 1 {
        ids[0].clone()
    } else {
        format!("{op}({}{tail})", ids.join(", "))
    }
}

fn meta(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn durations_ok(dmin: Rational, dmax: Rational) -> Result<()> {
    if dmin <= Rational::from_integer(0) || dmin > dmax {
        return Err(Error::invalid("durations need 0 < min <= max"));
    }
    Ok(())
}

/// `lanes` athletes, each free to run any grid interval of allowed length
/// inside the race window; combined with natural addition.
pub fn scenario_sprint(
    lanes: usize,
    window: DomainWindow,
    dmin: Rational,
    dmax: Rational,
    tick: Rational,
    limits: &Limits,
) -> Result<EventFile> {
    if lanes == 0 {
        return Err(Error::invalid("at least one lane"));
    }
    durations_ok(dmin, dmax)?;
    check_grid(
        tick,
        &[
            ("window length", window.beta() - window.alpha()),
            ("min duration", dmin),
            ("max duration", dmax),
        ],
    )?;
    let intervals = grid_intervals(window.alpha(), window.beta(), dmin, dmax, tick);
    product_size(std::iter::repeat_n(intervals.len(), lanes), limits)?;
    let ids: Vec<String> = (1..=lanes).map(|i| format!("athlete{i}")).collect();
    let mut file = EventFile::new(
        ids.iter()
            .map(|id| EventSpec {
                id: id.clone(),
                intervals: intervals.clone(),
            })
            .collect(),
    );
    file.expression = Some(call("natadd", &ids, ""));
    file.metadata = meta(&[
        ("scenario", "sprint".into()),
        ("tick", format_rational(&tick)),
        ("window", format!("{}..{}", window.alpha(), window.beta())),
        (
            "durations",
            format!("{}..{}", format_rational(&dmin), format_rational(&dmax)),
        ),
        (
            "reference_window",
            format!(
                "{}..{}",
                SPRINT_REFERENCE_WINDOW.0, SPRINT_REFERENCE_WINDOW.1
            ),
        ),
        (
            "reference_durations",
            format!(
                "{}..{}",
                SPRINT_REFERENCE_DURATIONS.0, SPRINT_REFERENCE_DURATIONS.1
            ),
        ),
    ]);
    Ok(file)
}

/// `skiers` starting one after another inside `[start, start + total]`;
/// combined with multiplication in the given start order.
pub fn scenario_downhill(
    skiers: usize,
    start: Timestamp,
    total: Rational,
    tmin: Rational,
    tmax: Rational,
    tick: Rational,
    limits: &Limits,
) -> Result<EventFile> {
    if skiers == 0 {
        return Err(Error::invalid("at least one skier"));
    }
    if total <= Rational::from_integer(0) {
        return Err(Error::invalid("total time must be positive"));
    }
    durations_ok(tmin, tmax)?;
    check_grid(
        tick,
        &[
            ("total", total),
            ("min duration", tmin),
            ("max duration", tmax),
        ],
    )?;
    let intervals = grid_intervals(start, start + total, tmin, tmax, tick);
    product_size(std::iter::repeat_n(intervals.len(), skiers), limits)?;
    let ids: Vec<String> = (1..=skiers).map(|i| format!("skier{i}")).collect();
    let mut file = EventFile::new(
        ids.iter()
            .map(|id| EventSpec {
                id: id.clone(),
                intervals: intervals.clone(),
            })
            .collect(),
    );
    file.expression = Some(call("mul", &ids, ""));
    file.metadata = meta(&[
        ("scenario", "downhill".into()),
        ("tick", format_rational(&tick)),
        ("window", format!("{}..{}", start, start + total)),
        (
            "durations",
            format!("{}..{}", format_rational(&tmin), format_rational(&tmax)),
        ),
        ("reference_start", DOWNHILL_REFERENCE_START.to_string()),
        ("reference_total", DOWNHILL_REFERENCE_TOTAL.to_string()),
        (
            "reference_durations",
            format!(
                "{}..{}",
                DOWNHILL_REFERENCE_DURATIONS.0, DOWNHILL_REFERENCE_DURATIONS.1
            ),
        ),
    ]);
    Ok(file)
}

/// One layer of the merge tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeLayer {
    /// 0 is the final merge.
    pub depth: u32,
    pub tasks: Vec<String>,
    /// Cost of one merge in this layer.
    pub cost: i128,
    /// Rounds needed with the given processor count.
    pub batches: i128,
    pub window: Interval,
}

#[derive(Clone, Debug)]
pub struct MergesortPlan {
    pub len: usize,
    pub procs: usize,
    /// Deepest (first executed) layer first.
    pub layers: Vec<MergeLayer>,
    pub file: EventFile,
}

/// Task id for merging sorted runs `[il, ir]` and `[jl, jr]` (1-based).
pub fn merge_task_id(il: usize, ir: usize, jl: usize, jr: usize) -> String {
    format!("m_{il}_{ir}_{jl}_{jr}")
}

/// Merge tasks of a bottom-up merge sort over `len` items with `procs`
/// processors. Each layer runs inside its own window; a layer with more
/// tasks than processors runs in rounds, and forbidden patterns stop more
/// than `procs` tasks from sharing a round.
pub fn scenario_mergesort(
    len: usize,
    procs: Option<usize>,
    limits: &Limits,
) -> Result<MergesortPlan> {
    if !(2..=16).contains(&len) || !len.is_power_of_two() {
        return Err(Error::invalid(format!(
            "length must be a power of two in 2..=16, got {len}"
        )));
    }
    let procs = procs.unwrap_or(len / 2);
    if procs == 0 {
        return Err(Error::invalid("at least one processor"));
    }
    let depth_count = len.trailing_zeros();
    let mut layers = Vec::new();
    let mut events = Vec::new();
    let mut constraints = Vec::new();
    let mut t0: i128 = 0;
    for depth in (0..depth_count).rev() {
        let count = 1usize << depth;
        let cost = (len >> depth) as i128;
        let batches = count.div_ceil(procs) as i128;
        let half = (cost / 2) as usize;
        let tasks: Vec<String> = (0..count)
            .map(|j| {
                let lo = j * cost as usize + 1;
                merge_task_id(lo, lo + half - 1, lo + half, lo + 2 * half - 1)
            })
            .collect();
        product_size(std::iter::repeat_n(batches as usize, count), limits)?;
        let slots: Vec<Interval> = (0..batches)
            .map(|s| Interval::of(t0 + s * cost, t0 + (s + 1) * cost))
            .collect();
        for id in &tasks {
            events.push(EventSpec {
                id: id.clone(),
                intervals: slots.clone(),
            });
        }
        if batches > 1 {
            for group in tasks.iter().combinations(procs + 1) {
                for slot in &slots {
                    constraints.push(ConstraintSpec::forbidden(
                        group.iter().map(|id| (id.as_str(), *slot)),
                    ));
                }
            }
        }
        let window = Interval::of(t0, t0 + batches * cost);
        layers.push(MergeLayer {
            depth,
            tasks,
            cost,
            batches,
            window,
        });
        t0 += batches * cost;
    }
    let parts: Vec<String> = layers
        .iter()
        .map(|l| {
            let tail = format!("; alpha={}, beta={}", l.window.start(), l.window.end());
            call("add", &l.tasks, &tail)
        })
        .collect();
    let mut file = EventFile::new(events);
    file.constraints = constraints;
    file.expression = Some(call("mul", &parts, ""));
    file.metadata = meta(&[
        ("scenario", "mergesort".into()),
        ("len", len.to_string()),
        ("procs", procs.to_string()),
    ]);
    Ok(MergesortPlan {
        len,
        procs,
        layers,
        file,
    })
}

/// Drawer OIEs for the sampling demo: `k` drawers, each free to draw in any
/// of `k` unit slots, never two in the same slot.
pub fn sampling_file(k: usize, tick: Rational) -> Result<EventFile> {
    check_grid(tick, &[])?;
    let slots: Vec<Interval> = (0..k as i128)
        .map(|s| {
            let lo = Timestamp::new(tick * s);
            Interval::new(lo, lo + tick).expect("tick is positive")
        })
        .collect();
    let ids: Vec<String> = (1..=k).map(|i| format!("drawer{i}")).collect();
    let mut file = EventFile::new(
        ids.iter()
            .map(|id| EventSpec {
                id: id.clone(),
                intervals: slots.clone(),
            })
            .collect(),
    );
    file.constraints = vec![ConstraintSpec::no_overlap(ids.iter().map(String::as_str))];
    let beta = tick * Rational::from_integer(k as i128);
    file.expression = Some(call(
        "add",
        &ids,
        &format!("; alpha=0, beta={}", format_rational(&beta)),
    ));
    file.metadata = meta(&[
        ("scenario", "sampling".into()),
        ("tick", format_rational(&tick)),
    ]);
    Ok(file)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormReport {
    pub schedules: usize,
    /// `counts[d][p]`: schedules where drawer `d` draws `p`-th.
    pub position_counts: Vec<Vec<u64>>,
    /// Chance that each drawer draws a red ball.
    pub red_marginal: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingReport {
    pub balls: usize,
    pub red: usize,
    pub drawers: usize,
    pub add: FormReport,
    pub mul: FormReport,
}

impl SamplingReport {
    /// True when every drawer holds each draw position equally often under
    /// addition.
    pub fn add_is_symmetric(&self) -> bool {
        self.add.position_counts.iter().flatten().all_equal()
    }
}

impl fmt::Display for SamplingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "sampling: {} balls, {} red, {} drawers",
            self.balls, self.red, self.drawers
        )?;
        for (name, form) in [("add", &self.add), ("mul", &self.mul)] {
            let noun = if form.schedules == 1 {
                "schedule"
            } else {
                "schedules"
            };
            writeln!(f, "{name}: {} {noun}", form.schedules)?;
            for (d, counts) in form.position_counts.iter().enumerate() {
                writeln!(
                    f,
                    "  drawer{}: draw-position counts [{}], red marginal {}",
                    d + 1,
                    counts.iter().join(", "),
                    format_rational(&form.red_marginal[d])
                )?;
            }
        }
        Ok(())
    }
}

/// Runs both forms of the drawer plan and computes, for each drawer, the
/// exact chance of drawing red when the balls are taken without replacement
/// in end-time order.
pub fn scenario_sampling(
    balls: usize,
    red: usize,
    drawers: usize,
    tick: Rational,
    config: &Config,
) -> Result<SamplingReport> {
    if !(1 < drawers && drawers <= red && red < balls && balls <= 6) {
        return Err(Error::invalid(format!(
            "need 1 < drawers <= red < balls <= 6, got drawers={drawers}, red={red}, balls={balls}"
        )));
    }
    let file = sampling_file(drawers, tick)?;
    let ws = file.compile()?;
    let add = ws.evaluate_main(config)?.result;
    let ids: Vec<String> = (1..=drawers).map(|i| format!("drawer{i}")).collect();
    let mul_expr = parse_expression(&call("mul", &ids, ""))?;
    let mul = ws.evaluate(&mul_expr, config)?.result;
    Ok(SamplingReport {
        balls,
        red,
        drawers,
        add: form_report(&add, balls, red, drawers)?,
        mul: form_report(&mul, balls, red, drawers)?,
    })
}

fn form_report(o: &Oie, balls: usize, red: usize, drawers: usize) -> Result<FormReport> {
    if o.is_void() {
        return Err(Error::invalid("drawer plan is void"));
    }
    let mut position_counts = vec![vec![0u64; drawers]; drawers];
    let mut red_hits = vec![0i128; drawers];
    let draws: Vec<Vec<usize>> = (0..balls).permutations(drawers).collect();
    for combo in o.details() {
        let mut order: Vec<usize> = (0..drawers).collect();
        order.sort_by_key(|&d| combo.items()[d].end());
        for (p, &d) in order.iter().enumerate() {
            position_counts[d][p] += 1;
            red_hits[d] += draws.iter().filter(|seq| seq[p] < red).count() as i128;
        }
    }
    let total = (o.details().len() * draws.len()) as i128;
    Ok(FormReport {
        schedules: o.details().len(),
        position_counts,
        red_marginal: red_hits
            .into_iter()
            .map(|h| Rational::new(h, total))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i128) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn sprint_counts() {
        let f = scenario_sprint(
            3,
            DomainWindow::new(0, 4).unwrap(),
            r(2),
            r(4),
            r(1),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(f.events.len(), 3);
        assert!(f.events.iter().all(|e| e.intervals.len() == 6));
        assert_eq!(
            f.expression.as_deref(),
            Some("natadd(athlete1, athlete2, athlete3)")
        );
        let single = scenario_sprint(
            1,
            DomainWindow::new(0, 4).unwrap(),
            r(2),
            r(4),
            r(1),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(single.expression.as_deref(), Some("athlete1"));
    }

    #[test]
    fn sprint_full_scale_is_too_big() {
        let w = DomainWindow::new(SPRINT_REFERENCE_WINDOW.0, SPRINT_REFERENCE_WINDOW.1).unwrap();
        let err = scenario_sprint(
            8,
            w,
            Rational::new(47, 5),
            r(20),
            Rational::new(1, 10),
            &Limits::default(),
        )
        .unwrap_err();
        assert!(err.is_capacity());
        assert!(
            scenario_sprint(2, w, Rational::new(47, 5), r(20), r(1), &Limits::default()).is_err()
        );
    }

    #[test]
    fn mergesort_layers() {
        let p = scenario_mergesort(8, None, &Limits::default()).unwrap();
        assert_eq!(p.layers.len(), 3);
        assert_eq!(p.layers.iter().map(|l| l.tasks.len()).sum::<usize>(), 7);
        let windows: Vec<Interval> = p.layers.iter().map(|l| l.window).collect();
        assert_eq!(
            windows,
            [Interval::of(0, 2), Interval::of(2, 6), Interval::of(6, 14)]
        );
        assert_eq!(p.layers[2].tasks, ["m_1_4_5_8"]);
        assert_eq!(p.layers[0].tasks[0], "m_1_1_2_2");

        let p = scenario_mergesort(16, Some(4), &Limits::default()).unwrap();
        let lengths: Vec<_> = p.layers.iter().map(|l| l.window.length()).collect();
        assert_eq!(lengths, [r(4), r(4), r(8), r(16)]);
        assert_eq!(p.file.constraints.len(), 112);

        let p = scenario_mergesort(2, None, &Limits::default()).unwrap();
        assert_eq!(p.file.expression.as_deref(), Some("m_1_1_2_2"));
        assert!(scenario_mergesort(12, None, &Limits::default()).is_err());
    }

    #[test]
    fn sampling_rejects_bad_parameters() {
        let cfg = Config::default();
        assert!(scenario_sampling(3, 2, 1, r(1), &cfg).is_err());
        assert!(scenario_sampling(3, 3, 2, r(1), &cfg).is_err());
        assert!(scenario_sampling(7, 3, 2, r(1), &cfg).is_err());
    }
}
