use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powergraph"))
        .args(args)
        .env_remove("POWERGRAPH_BUDGET_SECONDS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut with = args.to_vec();
    with.push("--json");
    serde_json::from_str(&stdout(&with)).unwrap()
}

#[test]
fn info_cyclic_twelve() {
    let text = stdout(&["info", "Z(12)"]);
    assert!(text.contains("order: 12"));
    assert!(text.contains("cyclic subgroups: 6"));
    assert!(text.contains("euler sum: 12 (ok"));
    let v = json(&["info", "Z(12)"]);
    assert_eq!(v["cyclic_subgroups"], 6);
    assert_eq!(v["euler_sum"]["sum"], 12);
}

#[test]
fn info_quaternion() {
    let v = json(&["info", "Q(8)"]);
    assert_eq!(v["involutions"].as_array().unwrap().len(), 1);
    assert_eq!(v["cyclic_subgroups"], 5);
}

#[test]
fn bad_spec_exits_nonzero() {
    let out = run(&["info", "Z(0)"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 1"));
    assert!(!run(&["dim", "Z(12"]).status.success());
    assert!(!run(&["info", "Z(4096)"]).status.success());
    assert!(!run(&["info", "Z(20)", "--max-order", "10"]).status.success());
}

#[test]
fn flags_are_validated() {
    assert_eq!(run(&["info", "Z(3)", "--verify"]).status.code(), Some(2));
    assert_eq!(run(&["corpus", "--dot", "x.dot"]).status.code(), Some(2));
}

#[test]
fn dim_examples() {
    assert!(stdout(&["dim", "Z(30)"]).contains("dim (formula): 23"));
    let text = stdout(&["dim", "Z(2)xZ(2)xZ(3)", "--verify"]);
    assert!(text.contains("dim (formula): 5"));
    assert!(text.contains("dim (oracle): 5 MATCH"));
    let v = json(&["dim", "Z(6)"]);
    assert_eq!(v["dim_formula"], 4);
    assert_eq!(v["u_count"], 3);
    assert_eq!(v["verification"]["status"], "not_run");
}

#[test]
fn dim_over_budget_is_inconclusive_but_succeeds() {
    let v = json(&["dim", "Z(60)", "--verify"]);
    assert_eq!(v["verification"]["status"], "inconclusive");
    assert_eq!(v["dim_oracle"], Value::Null);
    assert_eq!(v["dim_formula"], 49);
}

#[test]
fn verify_examples() {
    let text = stdout(&["verify", "D(6)"]);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("all checks passed"));
    assert!(stdout(&["verify", "Z(27)"]).contains("complete graph"));
}

#[test]
fn verify_reports_axiom_failure() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "3\n0 1 2\n1 0 2\n2 2 0").unwrap();
    let spec = format!("table:{}", f.path().display());
    let out = run(&["verify", &spec]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL group axioms"), "{text}");
    assert!(text.contains("triple"), "{text}");
}

#[test]
fn iso_examples() {
    assert!(stdout(&["iso", "Z(4)", "Z(2)xZ(2)"]).contains("NOT isomorphic"));
    let text = stdout(&["iso", "D(3)", "S(3)", "--verify"]);
    assert!(text.contains("power graphs isomorphic"));
    assert!(text.contains("AGREE"));
    assert!(stdout(&["iso", "E(3,2)", "Z(9)"]).contains("NOT isomorphic"));
    assert_eq!(json(&["iso", "Z(4)", "Z(2)xZ(2)"])["isomorphic"], false);
}

#[test]
fn graph_and_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z4.dot");
    let text = stdout(&["graph", "Z(4)", "--dot", path.to_str().unwrap()]);
    assert!(text.contains("4 vertices, 6 edges"));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph "));
    let v = json(&["graph", "Z(2)xZ(2)", "--kind", "orientation"]);
    assert_eq!(v["arcs"].as_array().unwrap().len(), 3);
    let v = json(&["graph", "Z(6)", "--kind", "subgroups"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn classes_lists_twins() {
    let v = json(&["classes", "Z(2)xZ(2)"]);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert!(classes.iter().any(|c| c["kind"] == "independent"));
    assert_eq!(v["class_structure"]["holds"], true);
}

#[test]
fn corpus_subset_and_json() {
    let text = stdout(&["corpus", "--max-order", "12"]);
    assert!(text.lines().next().unwrap().starts_with("group"));
    assert!(text.contains("0 failures"));
    assert!(!text.contains("Q(16)"));
    let v = json(&["corpus", "--max-order", "12"]);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["status"] == "match"));
    assert!(rows.iter().all(|r| r["order"].as_u64().unwrap() <= 12));
}

#[test]
fn output_is_deterministic() {
    for args in [&["corpus", "--max-order", "24"][..], &["dim", "S(4)", "--verify", "--json"]] {
        assert_eq!(stdout(args), stdout(args));
    }
}
