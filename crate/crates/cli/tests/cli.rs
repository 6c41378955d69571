use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn yb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yb")).current_dir(root()).args(args).output().expect("spawn yb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_structure() {
    let o = yb(&["validate", "structures/dual-numbers.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid"));
}

#[test]
fn verify_holding_recipe() {
    let o = yb(&["verify", "recipes/dn-case1-dual.json", "--suite", "braid,inverse"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks hold"));
}

#[test]
fn verify_failing_recipe_prints_witness() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("reports.jsonl");
    let o = yb(&["verify", "recipes/dn-invalid.json", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAILS") && out.contains("witness"), "{out}");
    let first: Value = serde_json::from_str(fs::read_to_string(&json).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(first["check"], "braid");
    assert!(first["witness"].is_object());
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(yb(&["bogus"]).status.code(), Some(2));
    assert_eq!(yb(&["verify", "recipes/no-such.json"]).status.code(), Some(2));
    assert_eq!(yb(&["verify", "recipes/twist.json", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(yb(&["search", "--field", "f5", "--out", "/dev/null"]).status.code(), Some(2));
}

#[test]
fn build_op_writes_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = yb(&["build-op", "recipes/dn-case1-dual.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_dn_case1_on_m2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.json");
    let o = yb(&["sweep", "recipes/dn-m2.json", "--grid", "grids/dn-case1.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("sweep: 25 points, 50 checks, all hold"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 25);
}

#[test]
fn sweep_one_param_skips_boundary_inverse() {
    let o = yb(&["sweep", "recipes/one-param-dual.json", "--grid", "grids/one-param.json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let skipped: Vec<&str> = out.lines().filter(|l| l.contains("inverse skipped")).collect();
    // s = q at both q, and s = 1/q at q = 2.
    assert_eq!(skipped.len(), 3, "{out}");
}

#[test]
fn search_f2_census() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(yb(&["search", "--field", "f2", "--invertible", "--out", a.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(yb(&["search", "--field", "f2", "--invertible", "--out", b.to_str().unwrap()]).status.code(), Some(0));
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(!PathBuf::from(format!("{}.progress", a.display())).exists());

    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["summary"]["solutions"], 49);
    assert_eq!(v["summary"]["family_matches"], 2);
    let rows: Vec<&Value> = v["solutions"].as_array().unwrap().iter().map(|s| &s["rows"]).collect();
    let identity: Value = serde_json::from_str("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]").unwrap();
    let twist: Value = serde_json::from_str("[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]").unwrap();
    assert!(rows.contains(&&identity) && rows.contains(&&twist));
}

#[test]
fn search_resumes_from_progress_file() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.json");
    assert_eq!(yb(&["search", "--field", "f2", "--out", full.to_str().unwrap()]).status.code(), Some(0));
    let census: Value = serde_json::from_str(&fs::read_to_string(&full).unwrap()).unwrap();

    // Chunk 0 holds the solutions whose first row is zero; a torn last line is dropped.
    let chunk0: Vec<Value> = census["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["rows"][0] == serde_json::json!([0, 0, 0, 0]))
        .cloned()
        .collect();
    let resumed = dir.path().join("resumed.json");
    let progress = format!(
        "{}\n{}\n{{\"chunk\": 1, \"hi",
        serde_json::json!({"census": "dim2-qybe", "p": 2, "invertible": false}),
        serde_json::json!({"chunk": 0, "hits": chunk0}),
    );
    fs::write(format!("{}.progress", resumed.display()), progress).unwrap();
    let o = yb(&["search", "--field", "f2", "--out", resumed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("resuming: 1 of 16"), "{}", stdout(&o));
    assert_eq!(fs::read_to_string(&full).unwrap(), fs::read_to_string(&resumed).unwrap());
}

#[test]
fn preset_paper_all_as_expected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("preset.jsonl");
    let o = yb(&["preset", "paper-all", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("every entry as expected"));
    assert!(!stdout(&o).contains("MISS"));
    assert!(fs::metadata(&out).unwrap().len() > 0);
}
