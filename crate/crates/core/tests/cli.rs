//! End-to-end runs of the `selftest` binary.

use std::path::Path;
use std::process::{Command, Output};

use selftest::cli::{parse, to_json, CheckDoc, CorrelateDoc, GoldenDoc, StrategyFile};

fn selftest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selftest"))
        .args(args)
        .env_remove("TOL")
        .env_remove("SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn export(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).display().to_string();
    let mut full = vec!["--out", path.as_str()];
    full.extend_from_slice(args);
    assert_eq!(selftest(&full).status.code(), Some(0));
    path
}

#[test]
fn exit_codes() {
    assert_eq!(selftest(&["build", "--n", "3"]).status.code(), Some(0));
    assert_eq!(selftest(&["build", "--n", "0"]).status.code(), Some(1));
    assert_eq!(selftest(&["correlate", "--n", "3", "--r", "3"]).status.code(), Some(1));
    assert_eq!(selftest(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(selftest(&["--help"]).status.code(), Some(0));
    assert_eq!(selftest(&["check", "--strategy", "/nonexistent/s.json", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn golden_passes() {
    let o = selftest(&["golden"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: GoldenDoc = parse(&stdout(&o)).unwrap();
    assert!(doc.pass && doc.cases.len() == 21);
}

#[test]
fn check_round_trips_exported_strategies() {
    let dir = tempfile::tempdir().unwrap();
    let plain = export(dir.path(), "s3.json", &["export", "--n", "3"]);
    let o = selftest(&["check", "--strategy", &plain, "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: CheckDoc = parse(&stdout(&o)).unwrap();
    assert_eq!(doc.multiplicities, Some([1, 0, 0, 0]));

    let dilated = export(dir.path(), "d3.json", &["--seed", "1", "export", "--n", "3", "--dilate", "2"]);
    assert_eq!(selftest(&["check", "--strategy", &dilated, "--n", "3"]).status.code(), Some(0));

    let adv = export(dir.path(), "a3.json", &["--seed", "3", "export", "--n", "3", "--adversarial", "1,1,0,0"]);
    let o = selftest(&["check", "--strategy", &adv, "--n", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let doc: CheckDoc = parse(&stdout(&o)).unwrap();
    assert!(!doc.accepted && doc.correlation_gap.0 > 0.0);
}

#[test]
fn malformed_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"version\": 1, \"n_A\": 2, \"n_B\": 2, \"state\": [1.0]}").unwrap();
    let o = selftest(&["check", "--strategy", path.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("parse error"));
}

#[test]
fn exported_file_reemits_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = export(dir.path(), "s.json", &["--seed", "5", "export", "--n", "4", "--r", "1", "--dilate", "3"]);
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(to_json(&parse::<StrategyFile>(&text).unwrap()).unwrap(), text);
}

#[test]
fn environment_overrides_tolerance_and_seed() {
    let o = Command::new(env!("CARGO_BIN_EXE_selftest"))
        .args(["correlate", "--n", "3"])
        .env("TOL", "1e-6")
        .env("SEED", "42")
        .output()
        .unwrap();
    let doc: CorrelateDoc = parse(&stdout(&o)).unwrap();
    assert_eq!(doc.config.tol.0, 1e-6);
    assert_eq!(doc.config.seed, 42);
}

#[test]
fn pretty_and_csv_formats() {
    let o = selftest(&["--format", "pretty", "verify", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().contains("PASS"));
    let o = selftest(&["--format", "csv", "spectrum", "--n", "3"]);
    assert_eq!(stdout(&o).lines().next(), Some("k,value,predicted"));
}
