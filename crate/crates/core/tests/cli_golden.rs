//! End-to-end runs of the command line through `oie::cli::run`.
//!
//! Regenerate the golden files with `UPDATE_GOLDEN=1 cargo test --test cli_golden`.

mod common;

use std::path::{Path, PathBuf};

use common::*;
use oie::cli::format::ResultDocument;
use oie::{csa, Config, ConstraintSet, DomainWindow, IndexTuple};

fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> String {
    root()
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["oie"];
    argv.extend_from_slice(args);
    let code = oie::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn check_golden(name: &str, actual: &str) {
    let path: PathBuf = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} differs from golden output");
}

fn golden_stdout(name: &str, args: &[&str]) {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    check_golden(name, &out);
}

#[test]
fn eval_doctors() {
    golden_stdout("eval_doctors.txt", &["eval", &data("doctors.json")]);
}

#[test]
fn orbit_doctors_mul() {
    golden_stdout(
        "orbit_doctors_mul.txt",
        &["orbit", &data("doctors.json"), "--op", "mul"],
    );
}

#[test]
fn cayley_three() {
    golden_stdout("cayley_3.txt", &["cayley", "-n", "3"]);
}

#[test]
fn diagrams() {
    golden_stdout("diagram_3.dot", &["diagram", "-n", "3"]);
    golden_stdout(
        "diagram_4_grid.dot",
        &["diagram", "-n", "4", "--layout", "grid"],
    );
    golden_stdout("diagram_2.svg", &["diagram", "-n", "2", "--svg"]);
}

#[test]
fn cayley_dot_file_matches_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("t.dot");
    let (code, out, _) = run(&["cayley", "-n", "3", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(!out.contains("graph"));
    let (_, diagram, _) = run(&["diagram", "-n", "3"]);
    assert_eq!(std::fs::read_to_string(dot).unwrap(), diagram);
}

#[test]
fn father_son_reports_void_step() {
    let (code, out, _) = run(&["eval", &data("father_son.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("VOID (step 3"), "{out}");
}

#[test]
fn expression_override() {
    let (code, out, _) = run(&["eval", &data("doctors.json"), "--expr", "mul(Dr_A, Dr_B)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("C: (Dr_A, Dr_B)\n"), "{out}");
    assert!(out.contains("I: {(0, 14), (0, 22)}"), "{out}");
}

#[test]
fn json_result_round_trips_and_validates() {
    let (code, out, _) = run(&["eval", &data("doctors.json"), "--json"]);
    assert_eq!(code, 0);
    let doc: ResultDocument = serde_json::from_str(&out).unwrap();
    let direct = csa(
        &[dr_b(), dr_a()],
        &IndexTuple::ascending(2),
        &DomainWindow::new(0, 22).unwrap(),
        &ConstraintSet::new(),
        &Config::default(),
    )
    .unwrap();
    assert_eq!(doc.result, direct);
    assert_eq!(doc.to_json(), out);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("result.json");
    std::fs::write(&path, &out).unwrap();
    let (code, out, err) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("valid"), "{out}");
}

#[test]
fn validate_event_files() {
    for name in ["doctors.json", "father_son.json"] {
        let (code, out, err) = run(&["validate", &data(name)]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("valid event file"), "{out}");
    }
}

#[test]
fn tampered_result_fails_validation() {
    let (_, out, _) = run(&["eval", &data("doctors.json"), "--json"]);
    let tampered = out.replacen("\"Dr_A\"", "\"Dr_Z\"", 1);
    assert_ne!(tampered, out);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, tampered).unwrap();
    let (code, _, _) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ \"format\": 1, \"events\": [").unwrap();
    let broken = broken.to_str().unwrap();
    let doctors = data("doctors.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["eval", "/nonexistent/file.json"],
        vec!["eval", broken],
        vec!["eval", &doctors, "--expr", "mul(Dr_A, Nobody)"],
        vec![
            "eval",
            &doctors,
            "--expr",
            "add(Dr_A, Dr_B; alpha=5, beta=5)",
        ],
        vec!["eval", &doctors, "--expr", "mul(Dr_A)"],
        vec!["orbit", &doctors, "--op", "add", "--alpha", "3"],
        vec!["cayley", "-n", "0"],
        vec![
            "scenario",
            "sampling",
            "--balls",
            "3",
            "--red",
            "3",
            "--drawers",
            "2",
        ],
        vec!["frobnicate"],
    ];
    for args in cases {
        let (code, _, err) = run(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn syntax_errors_carry_a_position() {
    let (code, _, err) = run(&["eval", &data("doctors.json"), "--expr", "mul(Dr_A,, Dr_B)"]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1") && err.contains("column 10"), "{err}");
}

#[test]
fn capacity_exits_two() {
    let cases: Vec<Vec<String>> = vec![
        vec!["--max-product".into(), "5".into(), "eval".into(), data("doctors.json")],
        vec!["cayley".into(), "-n".into(), "13".into()],
        vec!["--orbit-cap".into(), "1".into(), "orbit".into(), data("doctors.json"), "--op".into(), "mul".into()],
        "scenario sprint --lanes 8 --alpha 1736253600 --beta 1736253620 --dmin 9.4 --dmax 20 --tick 0.1"
            .split(' ')
            .map(String::from)
            .collect(),
    ];
    for args in cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = run(&argv);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn scenario_files_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["sprint", "downhill", "mergesort"] {
        let path = dir.path().join(format!("{kind}.json"));
        let (code, out, err) = run(&["scenario", kind, "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{kind}: {err}");
        assert!(out.starts_with("wrote "), "{out}");
        let (code, out, err) = run(&["eval", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{kind}: {err}");
        assert!(!out.starts_with("VOID"), "{kind} evaluated to void");
        let (_, direct, _) = run(&["scenario", kind, "--eval"]);
        assert!(
            direct.contains(&out),
            "{kind}: --eval output disagrees with eval of the file"
        );
    }
}

#[test]
fn mergesort_prints_a_schedule() {
    let (code, out, _) = run(&["scenario", "mergesort", "--len", "4", "--eval"]);
    assert_eq!(code, 0);
    assert!(out.contains("schedule:"), "{out}");
}
