use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lcurve_corner::io::{read_matrix, read_vector};
use lcurve_corner::trace::TraceDocument;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lcurve-corner"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn demo(dir: &Path, extra: &[&str]) -> (PathBuf, PathBuf) {
    let mut args = vec!["demo", "--output", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    (dir.join("matrix.csv"), dir.join("rhs.csv"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn corner_on_demo_problem() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &["--n", "32", "--seed", "1"]);
    let out = run(&["corner", s(&a), s(&b)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let doc = TraceDocument::from_json(&stdout(&out)).unwrap();
    assert_eq!(doc.evaluations, 4 + doc.iterations.len());
    assert!(doc.is_consistent());

    let summary = stderr(&out);
    let last = summary.lines().last().unwrap();
    let printed: f64 = last.strip_prefix("lambda_opt: ").unwrap().parse().unwrap();
    assert_eq!(printed, doc.lambda_opt);
}

#[test]
fn corner_writes_trace_file_and_csv() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &[]);
    let trace = dir.path().join("trace.json");
    let out = run(&["corner", s(&a), s(&b), "--scale", "log", "-o", s(&trace)]);
    assert!(out.status.success());
    let doc = TraceDocument::from_json(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert!(stdout(&out)
        .trim_end()
        .ends_with(&format!("lambda_opt: {:e}", doc.lambda_opt)));
    assert_eq!(doc.config.scale, lcurve_corner::corner::Scale::Log);

    let out = run(&["corner", s(&a), s(&b), "--format", "csv"]);
    let table = stdout(&out);
    let mut lines = table.lines();
    assert!(lines.next().unwrap().starts_with("index,branch,lambda1"));
    assert_eq!(lines.count(), doc_iterations(&a, &b));
}

fn doc_iterations(a: &Path, b: &Path) -> usize {
    let out = run(&["corner", s(a), s(b)]);
    TraceDocument::from_json(&stdout(&out))
        .unwrap()
        .iterations
        .len()
}

#[test]
fn corner_input_errors() {
    let dir = TempDir::new().unwrap();
    let (a, _) = demo(dir.path(), &["--n", "16"]);
    let short = dir.path().join("short.csv");
    fs::write(&short, "1\n2\n3\n").unwrap();
    let out = run(&["corner", s(&a), s(&short)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("dimension mismatch"));

    let rhs = dir.path().join("rhs.csv");
    let out = run(&[
        "corner",
        s(&a),
        s(&rhs),
        "--lambda-min",
        "1e-2",
        "--lambda-max",
        "1e-3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid interval"));

    let garbage = dir.path().join("garbage.csv");
    fs::write(&garbage, "1,2\nthree,4\n").unwrap();
    let out = run(&["corner", s(&garbage), s(&rhs)]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["corner", "/nonexistent/a.csv", s(&rhs)]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["corner"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_failures_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &[]);
    let out = run(&["corner", s(&a), s(&b), "--max-iter", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("MaxIterationsExceeded"));
}

#[test]
fn lcurve_rows_and_corner_mark() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &[]);

    let out = run(&["lcurve", s(&a), s(&b), "--points", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(
        text.lines().next().unwrap(),
        "lambda,xi,eta,curvature,is_corner"
    );
    assert_eq!(rows.len(), 3);
    assert!(rows[0][3].is_empty() && rows[2][3].is_empty());
    assert!(!rows[1][3].is_empty());

    let out = run(&["lcurve", s(&a), s(&b), "--points", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["lcurve", s(&a), s(&b), "--points", "50", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 50);
    assert_eq!(rows.iter().filter(|r| r["is_corner"] == true).count(), 1);
}

#[test]
fn solve_identity_system() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    fs::write(&a, "1,0\n0,1\n").unwrap();
    fs::write(&b, "2\n2\n").unwrap();
    let out = run(&["solve", s(&a), s(&b), "--lambda", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let x = read_vector(out.stdout.as_slice()).unwrap();
    assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    assert!(stderr(&out).contains("residual_sq: 2e0"));

    let out = run(&["solve", s(&a), s(&b), "--lambda", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_at_corner_beats_heavy_regularization() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &["--n", "32", "--seed", "1"]);
    let x_true = read_vector(fs::File::open(dir.path().join("x_true.csv")).unwrap()).unwrap();
    let out = run(&["corner", s(&a), s(&b)]);
    let lambda_opt = TraceDocument::from_json(&stdout(&out)).unwrap().lambda_opt;

    let error_at = |lambda: f64| {
        let out = run(&["solve", s(&a), s(&b), "--lambda", &format!("{lambda:e}")]);
        assert!(out.status.success());
        let x = read_vector(out.stdout.as_slice()).unwrap();
        (x - &x_true).norm() / x_true.norm()
    };
    assert!(error_at(lambda_opt) < error_at(lambda_opt * 1e3));
}

#[test]
fn demo_is_deterministic_and_sized() {
    let one = TempDir::new().unwrap();
    let two = TempDir::new().unwrap();
    demo(one.path(), &["--seed", "1"]);
    demo(two.path(), &["--seed", "1"]);
    for name in ["matrix.csv", "rhs.csv", "x_true.csv"] {
        assert_eq!(
            fs::read(one.path().join(name)).unwrap(),
            fs::read(two.path().join(name)).unwrap()
        );
    }
    let m = read_matrix(fs::File::open(one.path().join("matrix.csv")).unwrap()).unwrap();
    let b = read_vector(fs::File::open(one.path().join("rhs.csv")).unwrap()).unwrap();
    assert_eq!(m.shape(), (32, 32));
    assert_eq!(b.len(), 32);

    let out = run(&["demo", "--n", "4", "--output", one.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn demo_noise_is_within_bounds() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &["--n", "64", "--noise", "1e-2", "--seed", "2"]);
    let a = read_matrix(fs::File::open(a).unwrap()).unwrap();
    let b = read_vector(fs::File::open(b).unwrap()).unwrap();
    let x = read_vector(fs::File::open(dir.path().join("x_true.csv")).unwrap()).unwrap();
    let clean = a * x;
    let realized = (b - &clean).norm() / clean.norm();
    assert!((0.005..=0.02).contains(&realized), "{realized}");
}

#[test]
fn commands_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &[]);
    for args in [
        vec!["corner", s(&a), s(&b)],
        vec!["lcurve", s(&a), s(&b), "--points", "40"],
        vec!["solve", s(&a), s(&b), "--lambda", "1e-5"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn in_process_run_matches_binary() {
    let dir = TempDir::new().unwrap();
    let (a, b) = demo(dir.path(), &[]);
    let args = ["lcurve-corner", "lcurve", s(&a), s(&b), "--points", "20"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lcurve_corner::cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, run(&args[1..]).stdout);
}
