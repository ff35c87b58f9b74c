use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn starpir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starpir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn json_out(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn parent_73() -> Value {
    let exps = [
        37, 36, 34, 33, 32, 27, 25, 24, 22, 21, 19, 18, 15, 11, 10, 8, 7, 5, 3, 0,
    ];
    let coeffs: Vec<u32> = (0..38).map(|i| u32::from(exps.contains(&i))).collect();
    json!({ "cyclic_poly": { "q": 2, "n": 73, "coefficients": coeffs } })
}

#[test]
fn analyze_replicated_73() {
    let dir = TempDir::new().unwrap();
    let c = write(dir.path(), "c.json", &json!({ "replicated": { "q": 2, "n": 73 } }));
    let d = write(dir.path(), "d.json", &json!({ "dual": parent_73() }));
    let out = starpir(&["analyze", s(&c), s(&d), "--hint", "cyclic", "--json"]);
    let v = json_out(&out);
    assert_eq!(v["t"], 15);
    assert_eq!(v["rate_transitive"], "36/73");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"t\": 15"));
    assert!(text.contains("\"rate_transitive\": \"36/73\""));
}

#[test]
fn analyze_reports_support_bound_for_rm() {
    let dir = TempDir::new().unwrap();
    let c = write(dir.path(), "rm.json", &json!({ "rm": { "m": 6, "r": 2 } }));
    let v = json_out(&starpir(&["analyze", s(&c), s(&c), "--json"]));
    assert_eq!(v["collusion_bound"]["bound"], 15);
    assert_eq!(v["n"], 64);
}

#[test]
fn text_report_has_exact_fractions() {
    let dir = TempDir::new().unwrap();
    let c = write(dir.path(), "c.json", &json!({ "replicated": { "q": 5, "n": 7 } }));
    let d = write(
        dir.path(),
        "d.json",
        &json!({ "cyclic": { "q": 5, "n": 7, "defining_set": [0] } }),
    );
    let out = starpir(&["analyze", s(&c), s(&d)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1/7"), "{text}");
    assert!(!text.contains('.'), "{text}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = starpir(&["bound", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");

    let unknown = write(dir.path(), "u.json", &json!({ "hamming": { "m": 3 } }));
    assert_eq!(starpir(&["bound", s(&unknown)]).status.code(), Some(2));
    assert_eq!(starpir(&["cosets", "x", "2"]).status.code(), Some(2));
    assert_eq!(
        starpir(&["--max-enum", "40", "cosets", "7", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn cap_exceeded_exits_3() {
    let dir = TempDir::new().unwrap();
    let c = write(dir.path(), "rm.json", &json!({ "rm": { "m": 4, "r": 1 } }));
    let out = starpir(&["--max-enum", "3", "bound", s(&c)]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "cap_exceeded");
}

#[test]
fn computation_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let c = write(
        dir.path(),
        "c.json",
        &json!({ "cyclic": { "q": 2, "n": 7, "defining_set": [1] } }),
    );
    let out = starpir(&["bound", s(&c)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cosets_json() {
    let v = json_out(&starpir(&["cosets", "15", "2", "--json"]));
    assert_eq!(v["count"], 5);
    assert_eq!(v["cosets"][1], json!([1, 2, 4, 8]));
}

#[test]
fn star_normalizes_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let a = write(
        dir.path(),
        "a.json",
        &json!({ "bch": { "q": 2, "n": 15, "b": 1, "delta": 5 } }),
    );
    let b = write(
        dir.path(),
        "b.json",
        &json!({ "dual": { "bch": { "q": 2, "n": 15, "b": 1, "delta": 3 } } }),
    );
    let v = json_out(&starpir(&["star", s(&a), s(&b), "--json"]));
    assert!(v["descriptor"]["star"].is_array());
    let norm = write(dir.path(), "n.json", &v["normalized"]);
    let one = write(dir.path(), "one.json", &json!({ "replicated": { "q": 2, "n": 15 } }));
    let again = json_out(&starpir(&["star", s(&norm), s(&one), "--json"]));
    assert_eq!(again["normalized"], v["normalized"]);
    assert_eq!(again["params"], v["params"]);
}

#[test]
fn search_front() {
    let dir = TempDir::new().unwrap();
    let c = write(dir.path(), "c.json", &json!({ "replicated": { "q": 5, "n": 7 } }));
    let fams = write(dir.path(), "f.json", &json!(["all_cyclic"]));
    let v = json_out(&starpir(&["search", s(&c), s(&fams), "--json"]));
    let points: Vec<(u64, String)> = v["front"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["t"].as_u64().unwrap(),
                e["rate_transitive"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        points,
        vec![
            (0, "1/1".into()),
            (1, "6/7".into()),
            (6, "1/7".into()),
            (7, "0/1".into())
        ]
    );
}

#[test]
fn simulate_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let c = write(
        dir.path(),
        "c.json",
        &json!({ "bch": { "q": 2, "n": 15, "b": 1, "delta": 5 } }),
    );
    let d = write(
        dir.path(),
        "d.json",
        &json!({ "dual": { "bch": { "q": 2, "n": 15, "b": 1, "delta": 2 } } }),
    );
    let files = write(
        dir.path(),
        "files.json",
        &json!([[1, 0, 1, 1, 0, 0, 1], [0, 1, 1, 0, 1, 0, 0]]),
    );
    let args = ["simulate", s(&c), s(&d), s(&files), "--w", "2", "--seed", "7", "--json"];
    let first = json_out(&starpir(&args));
    assert_eq!(first["matches_file"], true);
    assert_eq!(first["recovered_file"], json!([0, 1, 1, 0, 1, 0, 0]));
    assert_eq!(first, json_out(&starpir(&args)));
    let no_seed = starpir(&["simulate", s(&c), s(&d), s(&files), "--w", "2"]);
    assert_eq!(no_seed.status.code(), Some(2));
    let bad_w = starpir(&["simulate", s(&c), s(&d), s(&files), "--w", "3", "--seed", "1"]);
    assert_eq!(bad_w.status.code(), Some(1));
}

#[test]
fn twoweight_profile_and_scheme() {
    let v = json_out(&starpir(&["twoweight", "6", "3", "--delta", "5", "--json"]));
    assert_eq!(v["profile"]["weights"], json!([[8, 21], [12, 42]]));
    assert_eq!(v["scheme"]["n"], 21);
}

#[test]
fn verify_matrix() {
    let v = json_out(&starpir(&["verify", "--json"]));
    assert_eq!(v["all_pass"], true);
    assert!(v["discrepancies"].as_array().unwrap().len() >= 3);
    let text = String::from_utf8(starpir(&["verify"]).stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(text.contains("claimed 4/7 = (6 - m)/7 at m = 3, computed 3/7"));
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = starpir(&["cosets", "7", "2", "--json", "--out", s(&path)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 3);
}
