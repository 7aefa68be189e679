use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn nilcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcheck"))
        .env_remove("NILPOTENTIZER_CACHE_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn info_reports_structure() {
    let v = json(&nilcheck(&["info", "S4"]));
    assert_eq!(v["order"], 24);
    assert_eq!(v["is_solvable"], true);
    assert_eq!(v["is_nilpotent"], false);

    let text = nilcheck(&["--format", "text", "info", "A5"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("simple") && text.lines().any(|l| l.starts_with("order") && l.ends_with("60")));
}

#[test]
fn nil_of_double_transposition() {
    let v = json(&nilcheck(&["nil", "S4", "--element", "(1 2)(3 4)"]));
    assert_eq!(v["size"], 16);
    assert_eq!(v["is_subgroup"], false);

    let csv = nilcheck(&["--format", "csv", "nil", "S4", "--element", "(1 2)(3 4)"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().next().unwrap().starts_with("element,label"));
}

#[test]
fn nil_all_covers_every_element() {
    let v = json(&nilcheck(&["nil-all", "S3"]));
    let profiles = v.as_array().unwrap();
    assert_eq!(profiles.len(), 6);
    assert_eq!(profiles[0]["size"], 6);
}

#[test]
fn cache_dir_holds_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = nilcheck(&["--cache-dir", cache, "nil", "S4", "--element", "23"]);
    let v = json(&first);
    let fingerprint = json(&nilcheck(&["info", "S4"]))["fingerprint"].as_str().unwrap().to_string();
    let file = dir.path().join(&fingerprint).join("nil-x23.json");
    assert!(file.exists(), "missing {}", file.display());

    let again = json(&nilcheck(&["--cache-dir", cache, "nil", "S4", "--element", "23"]));
    assert_eq!(v, again);
    assert!(fs::read_to_string(file).unwrap().contains(&fingerprint));
}

#[test]
fn verify_renders_each_format() {
    let text = nilcheck(&["--max-order", "24", "--format", "text", "verify", "--suite", "thm-1.1.1"]);
    assert!(text.status.success());
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("thm-1.1.1") && text.contains("fail 0"));

    let csv = nilcheck(&["--max-order", "24", "--format", "csv", "verify", "--suite", "thm-1.1.1"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert!(csv.starts_with("suite,group,params,status,witness,detail,ms"));
    assert!(csv.lines().skip(1).all(|l| l.starts_with("thm-1.1.1,")));
}

#[test]
fn trivial_corpus_passes_vacuously() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("one.json"), r#"{"type": "cayley", "order": 1, "table": [[0]]}"#).unwrap();
    let out = nilcheck(&["verify", "--suite", "thm-1.1", "--corpus", dir.path().to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["summary"]["counts"]["fail"], 0);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(nilcheck(&["info", "NoSuchGroup"]).status.code(), Some(2));
    assert_eq!(nilcheck(&["nil", "S4", "--element", "(1 9)"]).status.code(), Some(2));
    assert_eq!(nilcheck(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(nilcheck(&["verify"]).status.code(), Some(2));
}
