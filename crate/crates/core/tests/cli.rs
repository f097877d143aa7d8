use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circuitwalk"))
        .args(args)
        .env_remove("CIRCUITWALK_WORK_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_reports_optimum_and_uniqueness() {
    let o = run(&["solve", path(&data("square.lp"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "status: optimal\nvertex: 1 1\nvalue: -3\nunique: true\n");
}

#[test]
fn solve_empty_polytope_is_infeasible() {
    let o = run(&["solve", path(&data("empty.lp"))]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "infeasible\n");
}

#[test]
fn reduce_then_exact_step_from_zero() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("triangle.lp");
    let o = run(&["reduce", path(&data("triangle.graph")), "-o", path(&lp)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());

    let o = run(&["ddstep", path(&lp), "--mode", "exact", "--from", "zeros"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("improvement: 31/8\n"), "{out}");
    assert!(out.contains("circuit: 1 1 1\n"));
    assert!(out.contains("alpha: 1\n"));

    let o = run(&["ddstep", path(&lp), "--mode", "approx", "--from", "zeros"]);
    assert!(stdout(&o).contains("improvement: 31/8\n"));
}

#[test]
fn ocnp_exit_codes() {
    let sq = data("square.lp");
    let o = run(&["ocnp", path(&sq), "--from", "0 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "verdict: circuit-neighbor\noptimum: 1 1\n");

    let o = run(&["ocnp", path(&sq), "--from", "0 0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("verdict: not-circuit-neighbor"));

    let o = run(&["ocnp", path(&sq), "--from", "1 1"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let flat = dir.path().join("flat.lp");
    std::fs::write(&flat, "2 0 4\n1 0\n0 1\n-1 0\n0 -1\n1 1 0 0\n0 -1\n").unwrap();
    let o = run(&["ocnp", path(&flat), "--from", "0 0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("witness: "));
}

#[test]
fn point_can_come_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let pt = dir.path().join("start.pt");
    std::fs::write(&pt, "0 1\n").unwrap();
    let o = run(&["ocnp", path(&data("square.lp")), "--from", path(&pt)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn circuits_and_decompose() {
    let sq = data("square.lp");
    let o = run(&["circuits", path(&sq)]);
    assert_eq!(stdout(&o), "0 1\n1 0\n");

    let o = run(&["decompose", path(&sq), "--from", "0 0", "--to", "1 1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(sorted, ["1 | 0 1", "1 | 1 0"]);

    let o = run(&["decompose", path(&sq), "--from", "0 0", "--to", "0 0"]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn augment_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let o = run(&["augment", path(&data("square.lp")), "--from", "zeros", "--mode", "exact", "--trace", path(&trace)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "iterations: 2\npoint: 1 1\nvalue: -3\n");
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(
        csv,
        "iteration,circuit,alpha,improvement,objective_after\n1,0 1,1,2,-2\n2,1 0,1,1,-3\n"
    );
}

#[test]
fn longest_cycle_and_verify() {
    let o = run(&["longest-cycle", path(&data("k3.graph"))]);
    assert_eq!(stdout(&o), "cycle: 1 2 3\ncost: 31/8\n");

    let o = run(&["verify", path(&data("two_triangles.graph"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("correspondence: holds\ncycle: 1 2 3\n"));

    let dir = tempfile::tempdir().unwrap();
    let dag = dir.path().join("dag.graph");
    std::fs::write(&dag, "2 1\n1 2\n").unwrap();
    assert_eq!(stdout(&run(&["longest-cycle", path(&dag)])), "no-cycle\n");
    assert_eq!(run(&["verify", path(&dag)]).status.code(), Some(0));
}

#[test]
fn bench_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = run(&["bench", "--nodes", "4", "--trials", "6", "--seed", "11", "-o", path(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("graph_id,V,m,exact_improvement,approx_improvement,ratio,n_minus_rankA,exact_iters,approx_iters\n"));
    assert_eq!(text.lines().count(), 7);
    assert!(!text.contains('.'), "no decimal literals: {text}");

    let other = run(&["bench", "--nodes", "4", "--trials", "6", "--seed", "12"]);
    assert_ne!(stdout(&other), text);
}

#[test]
fn json_mirrors_text_with_rational_strings() {
    let o = run(&["--format", "json", "solve", path(&data("square.lp"))]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["vertex"], serde_json::json!(["1", "1"]));
    assert_eq!(v["value"], "-3");
    assert_eq!(v["uniqueness"]["unique"], true);

    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("t.lp");
    run(&["reduce", path(&data("triangle.graph")), "-o", path(&lp)]);
    let o = run(&["ddstep", path(&lp), "--from", "zeros", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["improvement"], "31/8");
    assert_eq!(v["circuit"], serde_json::json!(["1", "1", "1"]));
}

#[test]
fn parse_errors_go_to_stderr_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lp");
    std::fs::write(&bad, "2 0 4\n1 0\n0 1\n-1 0\n0 -1\n1 1 0 0\n-1 0.5\n").unwrap();
    let o = run(&["solve", path(&bad)]);
    assert_eq!(o.status.code(), Some(65));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("line 7, column 4"), "{}", stderr(&o));
}

#[test]
fn usage_and_io_failures() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["solve"]).status.code(), Some(64));
    assert_eq!(run(&["ddstep", path(&data("square.lp")), "--from", "0 0", "--mode", "fast"]).status.code(), Some(64));
    let o = run(&["solve", "/nonexistent/file.lp"]);
    assert_eq!(o.status.code(), Some(66));
    assert!(stderr(&o).contains("/nonexistent/file.lp"));
    let o = run(&["ocnp", path(&data("square.lp")), "--from", "2 2"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn work_budget_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_circuitwalk"))
        .args(["circuits", path(&data("square.lp"))])
        .env("CIRCUITWALK_WORK_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(6));
    assert!(String::from_utf8_lossy(&o.stderr).contains("work budget"));

    let o = Command::new(env!("CARGO_BIN_EXE_circuitwalk"))
        .args(["circuits", path(&data("square.lp"))])
        .env("CIRCUITWALK_WORK_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}
