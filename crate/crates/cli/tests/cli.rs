use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn delta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delta"))
        .args(args)
        .env_remove("DELTA_MAX_ORDER")
        .output()
        .unwrap()
}

fn delta_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_delta"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn cyclic_table(n: usize) -> String {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    serde_json::json!({ "order": n, "table": rows }).to_string()
}

#[test]
fn certify_s4_passes() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = delta(&["expected", "24"]);
    assert!(s4.status.success());
    let path = write(
        dir.path(),
        "s4.json",
        std::str::from_utf8(&s4.stdout).unwrap(),
    );
    let out = delta(&["certify", &path, "--builtin", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json(&out);
    for key in ["a_order", "b_ambivalence", "c_class_sizes", "d_index_two"] {
        assert_eq!(cert[key]["verdict"], "pass", "{key}");
    }
}

#[test]
fn certify_c4_fails_b() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c4.json", &cyclic_table(4));
    let out = delta(&["certify", &path, "--builtin", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let cert = json(&out);
    assert_eq!(cert["b_ambivalence"]["verdict"], "fail");
    assert_eq!(cert["first_failure"], "b");
    assert_eq!(cert["b_ambivalence"]["witness_order"], 4);
}

#[test]
fn spec_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = delta(&["expected", "24"]);
    let g = write(
        dir.path(),
        "s4.json",
        std::str::from_utf8(&s4.stdout).unwrap(),
    );
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"c":24,"class_sizes":[1,3,6,6,8],"parities":[[1,0],[3,0],[8,0],[6,1],[6,1]]}"#,
    );
    let out = delta(&["certify", &g, &spec]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["refinement"]["inside"],
        serde_json::json!([1, 3, 8])
    );
}

#[test]
fn expected_piped_into_analyze() {
    let s5 = delta(&["expected", "120"]);
    let out = delta_stdin(&["analyze", "-"], &s5.stdout);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class_profile"].as_array().unwrap().len(), 7);
    assert_eq!(v["index2_count"], 1);
}

#[test]
fn replay_and_canonical() {
    let s5 = delta(&["expected", "120"]);
    let out = delta_stdin(&["replay", "-", "--builtin", "120"], &s5.stdout);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_passed"], true);

    let out = delta_stdin(&["canonical", "-", "--builtin", "120"], &s5.stdout);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["marking_set"]["blocks"].as_array().unwrap().len(), 5);

    let out = delta_stdin(
        &["replay", "-", "--builtin", "6"],
        cyclic_table(6).as_bytes(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["first_failure"], "b");
}

#[test]
fn iso_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write(dir.path(), "c6.json", &cyclic_table(6));
    let s3 = String::from_utf8(delta(&["expected", "6"]).stdout).unwrap();
    let s3 = write(dir.path(), "s3.json", &s3);
    let out = delta(&["iso", &c6, &s3]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["isomorphic"], false);
    let out = delta(&["iso", &s3, &s3]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["isomorphism"]["map"].as_array().unwrap().len(),
        6
    );
}

#[test]
fn catalog_verify_and_persisted_rebuild() {
    let dir = tempfile::tempdir().unwrap();
    let jsonl = dir.path().join("cat24.jsonl");
    let jsonl = jsonl.to_str().unwrap();
    let out = delta(&["catalog-verify", "24", "--write-catalog", jsonl]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passers"], serde_json::json!(["S4"]));
    let lines = std::fs::read_to_string(jsonl).unwrap();
    assert_eq!(lines.lines().count(), 15);

    let out = delta(&["catalog-verify", "24", "--catalog", jsonl, "--rebuild"]);
    assert_eq!(out.status.code(), Some(0));

    let tampered = lines.replacen("\"table_hash\":\"", "\"table_hash\":\"0", 1);
    std::fs::write(jsonl, tampered).unwrap();
    let out = delta(&["catalog-verify", "24", "--catalog", jsonl, "--rebuild"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        "{\"order\": 2,\n \"table\": [[0,1],[1,",
    );
    let out = delta(&["analyze", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");

    let not_group = write(
        dir.path(),
        "ng.json",
        r#"{"order":2,"table":[[0,0],[1,1]]}"#,
    );
    assert_eq!(delta(&["analyze", &not_group]).status.code(), Some(2));
    assert_eq!(delta(&["expected", "720"]).status.code(), Some(2));
    assert_eq!(
        delta(&["analyze", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(delta(&["frobnicate"]).status.code(), Some(2));
    let c4 = write(dir.path(), "c4.json", &cyclic_table(4));
    assert_eq!(delta(&["certify", &c4]).status.code(), Some(2));
}

#[test]
fn max_order_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_delta"))
        .args(["expected", "120"])
        .env("DELTA_MAX_ORDER", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = delta(&["catalog-verify", "6"]);
    let b = delta(&["catalog-verify", "6"]);
    assert_eq!(a.stdout, b.stdout);
    let s5 = delta(&["expected", "120"]);
    let r1 = delta_stdin(&["canonical", "-", "--builtin", "120"], &s5.stdout);
    let r2 = delta_stdin(&["canonical", "-", "--builtin", "120"], &s5.stdout);
    assert_eq!(r1.stdout, r2.stdout);
}
