use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const POTTS2: &str = r#"{
  "model": {
    "k": 2,
    "q": 2,
    "lambda": [
      [-1.0, 0.0],
      [0.0, -1.0]
    ]
  },
  "params": PARAMS
}"#;

fn potts2(params: &str) -> String {
    POTTS2.replace("PARAMS", params)
}

fn run(dir: &Path, config: &str, args: &[&str]) -> Output {
    let path = dir.join("run.json");
    fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_cayley"))
        .args(args)
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn peierls_sweep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &potts2(r#"{ "n": 2, "boundary": 1, "beta": [0.5, 1, 2] }"#),
        &["peierls", "--workers", "3"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["summary"]["contours"], 359);
    for m in v["summary"]["max_ratio"].as_array().unwrap() {
        assert!(m.as_f64().unwrap() <= 1.0);
    }
}

#[test]
fn boundary_size_command_reports_every_subgraph() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"model": {"k": 3, "q": 2, "lambda": [[-1, 0], [0, -1]]},
                  "command": "lemma3", "params": {"max_vertices": 8}}"#;
    let out = run(dir.path(), cfg, &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let detail = v["checks"][0]["detail"].as_str().unwrap();
    assert_eq!(detail, "all 93492 subgraphs satisfy |boundary| = (k-1)n+2");
}

#[test]
fn asymmetric_lambda_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = potts2(r#"{ "n": 1 }"#).replace("[0.0, -1.0]", "[0.25, -1.0]");
    let out = run(dir.path(), &cfg, &["tree-info"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("run.json:6:"), "{err}");
    assert!(err.contains("lambda[1][2] = 0") && err.contains("lambda[2][1] = 0.25"), "{err}");
}

#[test]
fn malformed_json_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = potts2(r#"{ "n": 1, }"#);
    let out = run(dir.path(), &cfg, &["tree-info"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("run.json:10:"));
}

#[test]
fn bad_boundary_spin_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &potts2(r#"{ "n": 1, "boundary": 3 }"#), &["chi-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_enumeration_exceeds_the_budget() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &potts2(r#"{ "n": 5, "beta": 1 }"#), &["partition"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
}

#[test]
fn failed_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"model": {"k": 2, "q": 3, "lambda": [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]},
                  "params": {"n": 2, "beta": [0.5, 1, 2, 5], "bruteforce": true}}"#;
    let strict = run(dir.path(), cfg, &["marginal", "--tolerance", "0"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&strict.stderr).contains("FAIL recursion-agreement"));
    let v = json_of(&strict);
    assert_eq!(v["status"], "FAIL");
    let normal = run(dir.path(), cfg, &["marginal"]);
    assert_eq!(normal.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = potts2(r#"{ "n": 2, "beta": [0.5, 2] }"#);
    let a = run(dir.path(), &cfg, &["partition", "--workers", "4"]);
    let b = run(dir.path(), &cfg, &["partition", "--workers", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(dir.path(), &cfg, &["eq6", "--workers", "3", "--format", "csv"]);
    let d = run(dir.path(), &cfg, &["eq6", "--workers", "3", "--format", "csv"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn workers_do_not_change_exact_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = potts2(r#"{ "n": 2 }"#);
    let one = json_of(&run(dir.path(), &cfg, &["eq6", "--workers", "1"]));
    let many = json_of(&run(dir.path(), &cfg, &["eq6", "--workers", "5"]));
    assert_eq!(one["summary"], many["summary"]);
    assert_eq!(one["summary"]["configurations"], 1024);
}

#[test]
fn tree_info_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.txt");
    let params = format!(r#"{{ "n": 1, "edge_list": {:?} }}"#, edges.to_str().unwrap());
    let out = run(dir.path(), &potts2(&params), &["tree-info", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("tree_info_k2_n1.csv"));
    assert_eq!(fs::read_to_string(edges).unwrap(), golden("edges_k2_n1.txt"));
}

#[test]
fn contour_dump_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    // root and one grandchild flipped to spin 2 in V_2
    let spins = "[2, 1, 1, 1, 2, 1, 1, 1, 1, 1]";
    let params = format!(r#"{{ "n": 2, "boundary": 1, "spins": {spins} }}"#);
    let out = run(dir.path(), &potts2(&params), &["contours", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("contours_k2_n2.csv"));
}

#[test]
fn marginal_csv_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &potts2(r#"{ "n": 12, "beta": [0.9, 2] }"#),
        &["marginal", "--format", "csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("marginal_k2_q2_n12.csv"));
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run(
        dir.path(),
        &potts2(r#"{ "n": 2 }"#),
        &["chi-check", "--out", target.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["command"], "chi-check");
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn remaining_commands_pass_on_potts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = potts2(r#"{ "n": 2, "max_edges": 6, "max_r": 5, "max_set_size": 2, "assignment": [1, 2] }"#);
    for cmd in ["lemma4", "lemma5", "ground-states", "periodic", "hamiltonian-equiv"] {
        let out = run(dir.path(), &cfg, &[cmd]);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json_of(&out)["status"], "PASS", "{cmd}");
    }
}

#[test]
fn off_condition_specs_are_reported_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"model": {"k": 2, "q": 2, "lambda": [[-1, 0], [0, -2]]},
                  "params": {"n": 1, "beta": [1]}}"#;
    let out = run(dir.path(), cfg, &["hamiltonian-equiv"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["checks"][0]["status"], "INFO");
    assert!(v["summary"]["max_abs_diff"].as_f64().unwrap() > 0.0);
}
