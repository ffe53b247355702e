use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn verma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verma")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("error is one JSON object");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn example_matches_golden() {
    let o = verma(&["example-a2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("F2 d(s1+s1) = 2 d(y) + d(s1+s1+s2)"));
    assert!(s.contains("F1 d(s1+s1) = -d(s1+s1+s1)"));
    assert!(s.ends_with("golden: match\n"));
}

#[test]
fn verify_a2_exits_zero() {
    let o = verma(&["verify", "--type", "A2", "--lambda", "1,1", "--cutoff", "6", "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().last().unwrap().ends_with(", 0 failed"));
}

#[test]
fn verify_non_dominant_weight() {
    let o = verma(&["verify", "--type", "A2", "--lambda", "-1,0", "--cutoff", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("integrability"));
}

#[test]
fn verify_output_does_not_depend_on_jobs() {
    let args = ["verify", "--type", "A3", "--lambda", "1,0,1", "--cutoff", "3", "--format", "json"];
    let one = verma(&[&args[..], &["--jobs", "1"]].concat());
    let many = verma(&[&args[..], &["--jobs", "6"]].concat());
    assert_eq!(one.stdout, many.stdout);
    for line in stdout(&one).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], Value::Bool(true));
        assert!(v["relation"].is_string() && v["slice"].is_array() && v["witnesses"].is_array());
    }
}

#[test]
fn adjoint_character() {
    let o = verma(&["character", "--type", "A2", "--lambda", "1,1", "--cutoff", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("L-total 8\n"));
    assert!(s.contains("(1,1)\t2\t2\n"));
    let o = verma(&["character", "--type", "A2", "--lambda", "1,1", "--cutoff", "2", "--format", "json"]);
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], serde_json::json!({"beta": [0, 0], "verma_dim": 1, "l_dim": 1}));
}

#[test]
fn catalog_is_deterministic() {
    let a = verma(&["catalog", "--type", "A2", "--cutoff", "3", "--format", "json"]);
    let b = verma(&["catalog", "--type", "A2", "--cutoff", "3", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let entries: Vec<Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(entries.iter().any(|e| e["decomposition"] == "q1+s1" && e["beta"] == serde_json::json!([2, 1])));
    assert!(entries.iter().all(|e| e["fingerprint"].is_string()));
}

#[test]
fn act_on_zero_and_on_literals() {
    let o = verma(&["act", "--type", "A2", "--lambda", "1,1", "--word", "f2,f1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d(q1) + d(s1+s2)\n");
    let o = verma(&["act", "--type", "A2", "--lambda", "1,1", "--word", "e1,f1", "--on", "zero"]);
    assert_eq!(stdout(&o), "d(0)\n");

    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(br#"{"dims":[1,1],"arrows":{"2>1":[["1"]]}}"#).unwrap();
    let path = f.path().to_str().unwrap();
    let o = verma(&["act", "--type", "A2", "--lambda", "1,1", "--word", "f2", "--on", path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["beta"], serde_json::json!([1, 2]));
    assert_eq!(v["terms"], serde_json::json!([["q1+s2", "1"]]));
}

#[test]
fn config_file_and_graph_file() {
    let mut g = tempfile::NamedTempFile::new().unwrap();
    g.write_all(b"# A2 by hand\nvertices: 2\nedge: 0 1\n").unwrap();
    let mut c = tempfile::NamedTempFile::new().unwrap();
    writeln!(c, "graph={}\nlambda=1,1\ncutoff=4", g.path().display()).unwrap();
    let o = verma(&["character", "--config", c.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("L-total 8"));
    // flags take precedence over the file
    let o = verma(&["character", "--config", c.path().to_str().unwrap(), "--cutoff", "2"]);
    assert!(stdout(&o).contains("L-total 5"));
}

#[test]
fn config_errors_exit_four() {
    let o = verma(&["verify", "--lambda", "1,1"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_kind(&o), "Config");
    let o = verma(&["verify", "--type", "A2", "--lambda", "1,1,1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = verma(&["character", "--type", "A2"]);
    assert_eq!(o.status.code(), Some(4));
    let o = verma(&["catalog", "--type", "A2", "--cutoff", "0"]);
    assert_eq!(o.status.code(), Some(4));
    let o = verma(&["catalog", "--type", "A2", "--primes", "5,5,7"]);
    assert_eq!(o.status.code(), Some(4));
    let o = verma(&["act", "--type", "A2", "--lambda", "1,1", "--word", "g1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = verma(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(4));

    let mut c = tempfile::NamedTempFile::new().unwrap();
    c.write_all(b"type=A2\ncolour=blue\n").unwrap();
    let o = verma(&["catalog", "--config", c.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));

    let mut g = tempfile::NamedTempFile::new().unwrap();
    g.write_all(b"vertices: 1\nedge: 0 0\n").unwrap();
    let o = verma(&["catalog", "--graph", g.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_kind(&o), "LoopEdge");
}

#[test]
fn unknown_class_is_invalid_input() {
    let o = verma(&["act", "--type", "A2", "--lambda", "1,1", "--word", "f1", "--on", "s7"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_kind(&o), "Invalid");
    assert!(o.stdout.is_empty());
    serde_json::from_slice::<Value>(&o.stderr).unwrap();
}

#[test]
fn matrices() {
    let o = verma(&["pairing-matrix", "--type", "A2", "--cutoff", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let m: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let top = m.iter().find(|v| v["beta"] == serde_json::json!([1, 1])).unwrap();
    assert_eq!(top["words"].as_array().unwrap().len(), 2);
    assert_eq!(top["classes"].as_array().unwrap().len(), 3);

    let o = verma(&[
        "operator-matrix",
        "--type",
        "A2",
        "--lambda",
        "1,1",
        "--cutoff",
        "2",
        "--op",
        "h1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["basis"], v["target"]);
    }
}
