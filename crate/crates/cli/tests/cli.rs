use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn graphinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphinv")).args(args).output().expect("binary runs")
}

fn graphinv_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_graphinv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("graphinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn degree_of_eight_points() {
    let o = graphinv(&["degree", "--weights", "1,1,1,1,1,1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "40\n");
    let j = json(&graphinv(&["--format", "json", "degree", "--weights", "2,2,2,2,2", "--trace"]));
    assert_eq!(j["outputs"]["degree"], "5");
    assert_eq!(j["outputs"]["trace"]["step"]["rule"], "split");
}

#[test]
fn boundary_weights_are_flagged() {
    let j = json(&graphinv(&["--format", "json", "degree", "--weights", "3,1,1,1"]));
    assert_eq!(j["outputs"]["boundary"], true);
}

#[test]
fn simple_binomials_on_eight_points() {
    let o = graphinv(&["relations", "--n", "8", "--type", "simple-binomial"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 35);
    let j = json(&graphinv(&["--format", "json", "relations", "--n", "8", "--type", "simple-binomial"]));
    assert_eq!(j["outputs"]["count"], 35);
}

#[test]
fn segre_membership() {
    let o = graphinv(&["check-ideal", "--candidate", "segre", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "not a member\n");
    let j = json(&graphinv(&["--format", "json", "check-ideal", "--candidate", "segre", "--n", "8"]));
    assert_eq!(j["outputs"]["member"], true);
    assert_eq!(j["passed"], true);
    assert!(!j["outputs"]["certificate"].as_array().unwrap().is_empty());
}

#[test]
fn heavy_membership_needs_opt_in() {
    let o = graphinv(&["check-ideal", "--candidate", "segre", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--allow-heavy"));
}

#[test]
fn errors_exit_with_usage_code_and_name() {
    assert_eq!(graphinv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(graphinv(&["degree"]).status.code(), Some(2));
    let o = graphinv(&["degree", "--weights", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("OddTotalWeight"));
    let o = graphinv(&["chart", "--points", "0,1,2,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotInChart"));
    assert_eq!(graphinv(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_reports_are_deterministic() {
    for args in [
        &["--format", "json", "--seed", "7", "chart", "--random", "8"][..],
        &["--format", "json", "--seed", "7", "eval", "--n", "6", "--edges", "1-4,2-5,3-6"],
        &["--format", "json", "--seed", "7", "kempe", "--n", "6", "--edges", "1-2,2-3,3-1,4-5,5-6,6-4"],
    ] {
        let a = graphinv(args);
        let b = graphinv(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = graphinv(&["--format", "json", "--seed", "1", "chart", "--random", "8"]);
    let b = graphinv(&["--format", "json", "--seed", "2", "chart", "--random", "8"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn straighten_output_feeds_eval() {
    let path = tmp("straight.json");
    let o = graphinv(&["--format", "json", "--out", path.to_str().unwrap(), "straighten", "--n", "4", "--edges", "1-3,2-4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = graphinv(&["eval", "--n", "4", "--edges", "1-3,2-4", "--points", "0,1,5,7"]);
    let via = graphinv(&["eval", "--input", path.to_str().unwrap(), "--points", "0,1,5,7"]);
    assert_eq!(stdout(&direct), "30\n");
    assert_eq!(stdout(&via), "30\n");
}

#[test]
fn relations_output_feeds_check_ideal() {
    let gens = tmp("gens.json");
    let cand = tmp("segre8.json");
    graphinv(&["--format", "json", "--out", gens.to_str().unwrap(), "relations", "--n", "8", "--type", "simple-binomial"]);
    graphinv(&["--format", "json", "--out", cand.to_str().unwrap(), "relations", "--n", "8", "--type", "segre"]);
    let o = graphinv(&["check-ideal", "--candidate", cand.to_str().unwrap(), "--generators", gens.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "member\n");
}

#[test]
fn stdin_inputs() {
    let o = graphinv_stdin(&["straighten", "--input", "-"], r#"{"n":4,"edges":[[1,3],[2,4]]}"#);
    assert_eq!(stdout(&o), "(1)·X[1–2·3–4] + (1)·X[1–4·2–3]\n");
    let o = graphinv_stdin(&["chart", "--config", "-"], r#"{"points":[["0","1"],["0","1"],["1","0"],["1","0"]]}"#);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("W =\n  [0]\nZ =\n  [-1]\n"), "{}", stdout(&o));
}

#[test]
fn eval_reports_stability() {
    let o = graphinv(&["eval", "--n", "4", "--edges", "1-2,3-4", "--points", "0,0,1,inf", "--weights", "1,1,1,1"]);
    assert_eq!(stdout(&o), "0\nstrictlySemistable\n");
}

#[test]
fn kempe_and_basis() {
    let o = graphinv(&["kempe", "--n", "4", "--edges", "1-2,2-3,3-4,4-1"]);
    assert_eq!(stdout(&o), "(1)·X[1–2·3–4]·X[2–3·4–1]\n");
    let j = json(&graphinv(&["--format", "json", "kempe", "--n", "3", "--edges", "1-2,1-2,1-3,1-3", "--weights", "2,1,1"]));
    assert_eq!(j["passed"], true);
    assert_eq!(j["outputs"]["lifted"]["degree"], 2);
    assert_eq!(stdout(&graphinv(&["basis", "--n", "8"])).lines().count(), 14);
    assert_eq!(stdout(&graphinv(&["basis", "--n", "8", "--regular", "2"])).lines().count(), 91);
    assert_eq!(stdout(&graphinv(&["basis", "--n", "5", "--degree", "2,1,1,1,1"])).lines().count(), 3);
}

#[test]
fn quick_verification_passes() {
    let o = graphinv(&["--format", "json", "verify-all", "--quick"]);
    let j = json(&o);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(j["checks"].as_array().unwrap().len(), 9);
    assert!(j.get("timingMs").is_none());
}
