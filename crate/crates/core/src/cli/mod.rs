//! The `oie` command line: event files, the expression language, scenario
//! generators and output formats.
//!
//! [`run`] takes the arguments and output streams explicitly so the whole
//! tool can be driven in-process.

pub mod expr;
pub mod file;
pub mod format;
pub mod scenario;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{implement_nested, orbit_space, Operation};
use crate::config::{Config, IntersectionRule, Limits};
use crate::error::{Error, Result};
use crate::model::{validate_oie, Oie};
use crate::ops::DomainWindow;
use crate::semigroup::{cayley_table, emit_full_csa_diagram, emit_full_csa_svg, Layout};
use crate::time::{parse_rational, Rational, Timestamp};

use self::expr::{parse_expression, Expr};
use self::file::{EventFile, Workspace};
use self::format::{render_oie, render_traced, ResultDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "oie",
    version,
    about = "Plan optional intervals events with exact interval arithmetic"
)]
struct Cli {
    /// Largest Cartesian product to enumerate.
    #[arg(long, global = true, default_value_t = Limits::default().max_product)]
    max_product: u128,

    /// Most operands for orbit enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().orbit_cap)]
    orbit_cap: usize,

    /// Void when any two operands share an atom (true) or only when one atom
    /// is shared by all of them (false).
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set, value_name = "BOOL")]
    strict_intersection: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the expression of an event file.
    Eval {
        file: PathBuf,
        /// Evaluate this expression instead of the file's own.
        #[arg(long)]
        expr: Option<String>,
        /// Print the result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Group the results of every operand ordering by permutational equivalence.
    Orbit {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: OpKind,
        /// Window start for `add` (defaults to the file expression's).
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Option<Rational>,
        /// Window end for `add`.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        beta: Option<Rational>,
        /// Operand ids, comma separated (defaults to the expression's operands).
        #[arg(long, value_delimiter = ',')]
        events: Vec<String>,
    },
    /// Print the Cayley table of the addition semigroup over n atoms.
    Cayley {
        #[arg(short = 'n')]
        n: usize,
        /// Also write the diagram as DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LayoutArg::Circular)]
        layout: LayoutArg,
    },
    /// Emit the full diagram of the addition semigroup over n atoms.
    Diagram {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value_t = LayoutArg::Circular)]
        layout: LayoutArg,
        /// SVG instead of DOT.
        #[arg(long)]
        svg: bool,
        /// Write here instead of standard output.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Generate a scenario.
    Scenario {
        #[command(subcommand)]
        kind: ScenarioCommand,
    },
    /// Check an event file or a JSON result.
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpKind {
    Add,
    Mul,
    Natadd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LayoutArg {
    Circular,
    Grid,
}

impl From<LayoutArg> for Layout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::Circular => Layout::Circular,
            LayoutArg::Grid => Layout::Grid,
        }
    }
}

#[derive(Args, Debug)]
struct Emit {
    /// Write the event file here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also evaluate the generated expression.
    #[arg(long)]
    eval: bool,
}

#[derive(Subcommand, Debug)]
enum ScenarioCommand {
    /// Athletes sharing one race window, combined with natural addition.
    Sprint {
        #[arg(long, default_value_t = 3)]
        lanes: usize,
        #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "4", allow_hyphen_values = true)]
        beta: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "2")]
        dmin: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "4")]
        dmax: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "1")]
        tick: Rational,
        #[command(flatten)]
        emit: Emit,
    },
    /// Skiers starting one after another, combined with multiplication.
    Downhill {
        #[arg(long, default_value_t = 2)]
        skiers: usize,
        #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
        start: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "6")]
        total: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "2")]
        tmin: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "3")]
        tmax: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "1")]
        tick: Rational,
        #[command(flatten)]
        emit: Emit,
    },
    /// Merge tasks of a parallel merge sort, layered by addition and chained
    /// by multiplication.
    Mergesort {
        #[arg(long, default_value_t = 8)]
        len: usize,
        /// Processors (defaults to len / 2).
        #[arg(long)]
        procs: Option<usize>,
        #[command(flatten)]
        emit: Emit,
    },
    /// Drawers taking balls without replacement; reports exact red marginals.
    Sampling {
        #[arg(long, default_value_t = 3)]
        balls: usize,
        #[arg(long, default_value_t = 2)]
        red: usize,
        #[arg(long, default_value_t = 2)]
        drawers: usize,
        #[arg(long, value_parser = rational_arg, default_value = "1")]
        tick: Rational,
    },
}

/// Runs the tool and returns its exit status: 0 on success (void results
/// included), 1 on bad input, 2 when a capacity limit is hit.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let config = Config {
        limits: Limits {
            max_product: cli.max_product,
            orbit_cap: cli.orbit_cap,
            ..Limits::default()
        },
        intersection: if cli.strict_intersection {
            IntersectionRule::Pairwise
        } else {
            IntersectionRule::Aggregate
        },
    };
    match dispatch(cli.command, &config, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::invalid(format!("cannot write output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Workspace> {
    EventFile::load(path)?.compile()
}

fn dispatch(command: Command, config: &Config, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Eval { file, expr, json } => {
            let ws = load(&file)?;
            let traced = match expr {
                Some(text) => {
                    let e = parse_expression(&text)?;
                    ws.evaluate(&e, config)?
                }
                None => ws.evaluate_main(config)?,
            };
            if json {
                emit(out, &ResultDocument::new(&traced).to_json())
            } else {
                emit(out, &render_traced(&traced))
            }
        }
        Command::Orbit {
            file,
            op,
            alpha,
            beta,
            events,
        } => orbit(&load(&file)?, op, alpha, beta, &events, config, out),
        Command::Cayley { n, dot, layout } => {
            let t = cayley_table(n, &config.limits)?;
            emit(out, &t.to_string())?;
            if let Some(path) = dot {
                write_file(&path, &emit_full_csa_diagram(&t, layout.into()))?;
            }
            Ok(())
        }
        Command::Diagram {
            n,
            layout,
            svg,
            output,
        } => {
            let t = cayley_table(n, &config.limits)?;
            let text = if svg {
                emit_full_csa_svg(&t, layout.into())
            } else {
                emit_full_csa_diagram(&t, layout.into())
            };
            match output {
                Some(path) => write_file(&path, &text),
                None => emit(out, &text),
            }
        }
        Command::Scenario { kind } => scenario(kind, config, out),
        Command::Validate { file } => validate(&file, out),
    }
}

fn orbit(
    ws: &Workspace,
    op: OpKind,
    alpha: Option<Rational>,
    beta: Option<Rational>,
    ids: &[String],
    config: &Config,
    out: &mut dyn Write,
) -> Result<()> {
    let main = ws.expression.as_ref();
    let (labels, operands): (Vec<String>, Vec<Oie>) = if ids.is_empty() {
        let e = main.ok_or_else(|| Error::invalid("the file has no expression; pass --events"))?;
        if e.children().is_empty() {
            return Err(Error::invalid(
                "the expression has a single operand; pass --events",
            ));
        }
        let mut labels = Vec::new();
        let mut operands = Vec::new();
        for c in e.children() {
            labels.push(c.to_string());
            operands.push(ws.evaluate(c, config)?.result);
        }
        (labels, operands)
    } else {
        let operands = ids
            .iter()
            .map(|id| ws.event(id).cloned())
            .collect::<Result<_>>()?;
        (ids.to_vec(), operands)
    };
    let operation = match op {
        OpKind::Mul => Operation::Mul,
        OpKind::Natadd => Operation::NaturalAdd,
        OpKind::Add => {
            let (a, b) = match (alpha, beta, main) {
                (Some(a), Some(b), _) => (a, b),
                (None, None, Some(Expr::Add { alpha, beta, .. })) => (*alpha, *beta),
                _ => return Err(Error::invalid("--op add needs --alpha and --beta")),
            };
            Operation::Add(DomainWindow::new(Timestamp::new(a), Timestamp::new(b))?)
        }
    };
    let space = orbit_space(&operands, &operation, &ws.constraints, config)?;
    let mut text = format!("operands: ({})\n", labels.join(", "));
    text.push_str(&format!(
        "{} {}\n",
        space.len(),
        if space.len() == 1 { "class" } else { "classes" }
    ));
    for (k, class) in space.classes.iter().enumerate() {
        let tuples: Vec<String> = class.index_tuples.iter().map(ToString::to_string).collect();
        text.push_str(&format!("\nclass {}: {}\n", k + 1, tuples.join(" ")));
        text.push_str(&render_oie(&class.representative));
    }
    emit(out, &text)
}

fn emit_scenario(
    file: &EventFile,
    opts: &Emit,
    config: &Config,
    out: &mut dyn Write,
) -> Result<Option<Oie>> {
    match &opts.out {
        Some(path) => {
            write_file(path, &file.to_json())?;
            emit(
                out,
                &format!(
                    "wrote {} events, {} constraints\n",
                    file.events.len(),
                    file.constraints.len()
                ),
            )?;
        }
        None => emit(out, &file.to_json())?,
    }
    if !opts.eval {
        return Ok(None);
    }
    let traced = file.compile()?.evaluate_main(config)?;
    emit(out, &render_traced(&traced))?;
    Ok(Some(traced.result))
}

fn scenario(kind: ScenarioCommand, config: &Config, out: &mut dyn Write) -> Result<()> {
    match kind {
        ScenarioCommand::Sprint {
            lanes,
            alpha,
            beta,
            dmin,
            dmax,
            tick,
            emit: opts,
        } => {
            let w = DomainWindow::new(Timestamp::new(alpha), Timestamp::new(beta))?;
            let file = scenario::scenario_sprint(lanes, w, dmin, dmax, tick, &config.limits)?;
            emit_scenario(&file, &opts, config, out).map(drop)
        }
        ScenarioCommand::Downhill {
            skiers,
            start,
            total,
            tmin,
            tmax,
            tick,
            emit: opts,
        } => {
            let file = scenario::scenario_downhill(
                skiers,
                Timestamp::new(start),
                total,
                tmin,
                tmax,
                tick,
                &config.limits,
            )?;
            emit_scenario(&file, &opts, config, out).map(drop)
        }
        ScenarioCommand::Mergesort {
            len,
            procs,
            emit: opts,
        } => {
            let plan = scenario::scenario_mergesort(len, procs, &config.limits)?;
            let Some(result) = emit_scenario(&plan.file, &opts, config, out)? else {
                return Ok(());
            };
            let Some(first) = result.details().iter().next() else {
                return Ok(());
            };
            let mut text = String::from("schedule:\n");
            for (task, iv) in implement_nested(&result, first)? {
                text.push_str(&format!("  {task}: {iv:?}\n"));
            }
            emit(out, &text)
        }
        ScenarioCommand::Sampling {
            balls,
            red,
            drawers,
            tick,
        } => {
            let report = scenario::scenario_sampling(balls, red, drawers, tick, config)?;
            emit(out, &report.to_string())
        }
    }
}

fn validate(path: &Path, out: &mut dyn Write) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    if let Ok(doc) = serde_json::from_str::<ResultDocument>(&text) {
        let report = validate_oie(&doc.result);
        if !report.is_valid() {
            return Err(Error::invalid(
                report.to_string().trim_end().replace('\n', "; "),
            ));
        }
        return emit(out, "valid result\n");
    }
    let ws = EventFile::from_json(&text)?.compile()?;
    for (id, o) in &ws.events {
        let report = validate_oie(o);
        if !report.is_valid() {
            return Err(Error::invalid(format!("event {id}: {report}")));
        }
    }
    emit(
        out,
        &format!(
            "valid event file: {} events, {} constraints{}\n",
            ws.events.len(),
            ws.constraints.forbidden().len() + ws.constraints.rules().len(),
            if ws.expression.is_some() {
                ", expression ok"
            } else {
                ""
            }
        ),
    )
}
