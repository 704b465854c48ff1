use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn markov_file(dir: &Path) -> String {
    let path = dir.join("markov.json");
    let o = qgt(&[
        "generate",
        "--family",
        "markov",
        "--out",
        path.to_str().unwrap(),
        "--output",
        "json",
    ]);
    assert!(o.status.success());
    path.to_str().unwrap().to_string()
}

const MARKOV_QUIVER: &str = r#"{
  "vertices": ["1", "2", "3"],
  "arrows": [
    {"id": "alpha", "src": "1", "tgt": "2"},
    {"id": "sigma", "src": "1", "tgt": "2"},
    {"id": "beta", "src": "2", "tgt": "3"},
    {"id": "gamma", "src": "2", "tgt": "3"},
    {"id": "delta", "src": "3", "tgt": "1"},
    {"id": "rho", "src": "3", "tgt": "1"}
  ],
  "f": [["alpha", "gamma", "delta"], ["beta", "rho", "sigma"]]
}"#;

#[test]
fn generate_markov_has_twelve_relations() {
    let o = qgt(&["generate", "--family", "markov", "--output", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["relations"].as_array().unwrap().len(), 12);
}

#[test]
fn generate_tetrahedral_m2_has_twenty_four_relations() {
    let o = qgt(&["generate", "--family", "tetrahedral", "--m", "2", "--output", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["relations"].as_array().unwrap().len(), 24);
}

#[test]
fn generate_writes_dsl() {
    let dir = tempfile::tempdir().unwrap();
    let dsl = dir.path().join("m.txt");
    let o = qgt(&[
        "generate",
        "--family",
        "markov",
        "--m",
        "2",
        "--dsl",
        dsl.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&dsl).unwrap(), stdout(&o));
}

#[test]
fn missing_file_exits_one() {
    let o = qgt(&["validate", "/nonexistent/q.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn f_not_of_order_three_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = MARKOV_QUIVER.replace(
        r#"[["alpha", "gamma", "delta"], ["beta", "rho", "sigma"]]"#,
        r#"[["alpha", "gamma", "delta", "sigma", "beta", "rho"]]"#,
    );
    let path = dir.path().join("bad.json");
    fs::write(&path, bad).unwrap();
    let o = qgt(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("condition (c)"));
}

#[test]
fn valid_quiver_passes_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    fs::write(&path, MARKOV_QUIVER).unwrap();
    let o = qgt(&["validate", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("valid quiver"));
}

#[test]
fn resolve_markov_reports_period_four() {
    let dir = tempfile::tempdir().unwrap();
    let input = markov_file(dir.path());
    let o = qgt(&["resolve", "--input", &input, "--field", "GF:5", "--output", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let rs = v["resolutions"].as_array().unwrap();
    assert_eq!(rs.len(), 3);
    assert!(rs.iter().all(|r| r["period"] == 4));
}

#[test]
fn resolve_unknown_vertex_is_a_usage_error() {
    let o = qgt(&["resolve", "--family", "markov", "--vertex", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn markov_quiver_lives_on_the_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    fs::write(&path, MARKOV_QUIVER).unwrap();
    let o = qgt(&["surface", "from-quiver", path.to_str().unwrap(), "--output", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["topology"]["euler_characteristic"], 2);
    assert_eq!(v["topology"]["boundary_components"], 0);

    let surf = dir.path().join("s.json");
    fs::write(&surf, serde_json::to_string(&v["surface"]).unwrap()).unwrap();
    let back = qgt(&["surface", "to-quiver", surf.to_str().unwrap(), "--output", "json"]);
    assert!(back.status.success());
    assert_eq!(json(&back)["arrows"].as_array().unwrap().len(), 6);
}

#[test]
fn singular_tetrahedral_fails_analysis() {
    let o = qgt(&[
        "analyze",
        "--family",
        "tetrahedral",
        "--lambda",
        "0",
        "--field",
        "GF:5",
        "--bound",
        "6",
        "--output",
        "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["verdict"]["consistent"], false);
    assert!(v["verdict"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s.as_str().unwrap().contains("period")));
}

#[test]
fn analyze_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = qgt(&[
        "analyze",
        "--family",
        "markov",
        "--field",
        "GF:7",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: consistent"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["family"], "weighted");
    assert_eq!(v["dimension"], 36);
}

#[test]
fn export_dot_renders_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    fs::write(&path, MARKOV_QUIVER).unwrap();
    let o = qgt(&["export-dot", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn weighted_needs_a_quiver() {
    let o = qgt(&["generate", "--family", "weighted"]);
    assert_eq!(o.status.code(), Some(2));
}

const DISK_QUIVER: &str = r#"{
  "vertices": ["1", "2", "3"],
  "arrows": [
    {"id": "alpha", "src": "1", "tgt": "2"},
    {"id": "beta", "src": "2", "tgt": "3"},
    {"id": "gamma", "src": "3", "tgt": "1"},
    {"id": "epsilon", "src": "1", "tgt": "1"},
    {"id": "eta", "src": "2", "tgt": "2"},
    {"id": "mu", "src": "3", "tgt": "3"}
  ],
  "f": [["alpha", "beta", "gamma"], ["epsilon"], ["eta"], ["mu"]]
}"#;

#[test]
fn weighted_disk_from_quiver_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disk.json");
    fs::write(&path, DISK_QUIVER).unwrap();
    let q = path.to_str().unwrap();
    let o = qgt(&[
        "generate", "--family", "weighted", "--quiver", q, "--m", "1", "--c", "1", "--b", "0",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 12);
    assert!(text.contains("epsilon*epsilon - alpha*eta*beta*mu*gamma"));

    let o = qgt(&[
        "analyze", "--family", "deformed", "--quiver", q, "--b", "1,0,0", "--field", "GF:2", "--output", "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["family"], "deformed");
    assert_eq!(v["verdict"]["consistent"], true);
}

#[test]
fn resolve_with_small_bound() {
    let o = qgt(&[
        "resolve", "--family", "markov", "--m", "1", "--vertex", "1", "--bound", "4",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("period 4"));
}
