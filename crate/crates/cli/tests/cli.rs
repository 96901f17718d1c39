use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qwalk() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qwalk"));
    cmd.env_remove("QWALK_JOBS");
    cmd
}

fn run(args: &[&str]) -> Output {
    qwalk().args(args).output().unwrap()
}

fn file_with(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_p4() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = file_with(dir.path(), "p4.g6", "Ch\n");
    let copy = dir.path().join("out.json");
    let out = run(&["analyze", &p4, "--json", copy.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "analyze");
    let vertices = doc["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 4);
    assert!(vertices.iter().all(|v| v["controllable"] == true));
    assert!(vertices.iter().all(|v| v["support_class"]["kind"] == "neither"));
    assert!((doc["gap"]["sigma"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(std::fs::read(copy).unwrap(), out.stdout);
}

#[test]
fn analyze_from_stdin() {
    let mut child = qwalk()
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["graph"]["graph6"], "Bg");
    let pairs = doc["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert!(pairs[0]["pst"]["tau"].as_f64().is_some());
}

#[test]
fn analyze_k1() {
    let dir = tempfile::tempdir().unwrap();
    let k1 = file_with(dir.path(), "k1.g6", "@\n");
    let out = run(&["analyze", &k1]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 0);
    assert!(doc["gap"].is_null());
}

#[test]
fn pair_reports() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = file_with(dir.path(), "p3.g6", "Bg\n");
    let out = run(&["pair", &p3, "0", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let tau = doc["report"]["pst_found"]["tau"].as_f64().unwrap();
    assert!((tau - std::f64::consts::PI / 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(doc["report"]["evidence"], "numeric");
    assert_eq!(doc["report"]["pst_structure"]["passed"], true);

    let pete = file_with(dir.path(), "petersen.g6", "IheA@GUAo\n");
    let out = run(&["pair", &pete, "0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["report"]["pst_found"].is_null());
    assert_eq!(doc["report"]["v_singleton_in_delta_u"], false);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = file_with(dir.path(), "p3.g6", "Bg\n");
    let bad = file_with(dir.path(), "bad.g6", "A__\n");
    let split = file_with(dir.path(), "split.json", r#"{"n": 4, "edges": [[0, 1], [2, 3]]}"#);
    for args in [
        vec!["pair", p3.as_str(), "0", "3"],
        vec!["pair", p3.as_str(), "1", "1"],
        vec!["pair", split.as_str(), "0", "1"],
        vec!["analyze", bad.as_str()],
        vec!["analyze", p3.as_str(), "--threshold", "1.5"],
        vec!["analyze", p3.as_str(), "--no-such-flag"],
        vec!["analyze", "/nonexistent/graph.g6"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn empty_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let empty = file_with(dir.path(), "empty.g6", "\n  \n");
    assert_eq!(run(&["analyze", &empty]).status.code(), Some(1));
    let out = run(&["scan", &empty]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let junk = file_with(dir.path(), "junk.g6", "!!\n");
    let out = run(&["scan", &junk]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn scan_lines_are_ordered_and_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = file_with(dir.path(), "cat.g6", "Bg\nCh\nnot graph6\nGhCKEW\nGr`HOk\nIheA@GUAo\nA_\n");
    let single = run(&["scan", &catalog, "--jobs", "1"]);
    assert_eq!(single.status.code(), Some(0));
    let pooled = qwalk().args(["scan", &catalog]).env("QWALK_JOBS", "4").output().unwrap();
    assert_eq!(pooled.status.code(), Some(0));
    assert_eq!(single.stdout, pooled.stdout);

    let text = String::from_utf8(single.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 7);
    let numbers: Vec<u64> = lines.iter().map(|l| l["line"].as_u64().unwrap()).collect();
    assert_eq!(numbers, (1..=7).collect::<Vec<_>>());
    assert!(lines[2]["error"].is_string());
    assert!(lines.iter().all(|l| l["schema_version"] == 1));
    assert_eq!(lines[0]["pst_hits"], 1);
    assert_eq!(lines[4]["pst_hits"], 4);
}
