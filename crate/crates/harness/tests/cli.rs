use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nilaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn verify(args: &[&str], report: &Path) -> Output {
    let mut all = vec!["verify", "--report", report.to_str().unwrap()];
    all.extend_from_slice(args);
    nilaut(&all)
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn unknown_suite_is_a_usage_error_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = verify(&["--suite", "unknown-name"], &path);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown-name"));
    assert!(!path.exists());
}

#[test]
fn out_of_range_parameters_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    for args in [
        &["--suite", "group-axioms", "--rank", "9"][..],
        &["--suite", "lemma-2.1", "--class", "1"],
        &["--suite", "eq-2", "--rank", "3"],
        &["--suite", "eq-2", "--m-range", "3:1"],
        &["--suite", "eq-2", "--samples", "4"],
    ] {
        assert_eq!(verify(args, &path).status.code(), Some(2), "{args:?}");
    }
    assert!(!path.exists());
}

#[test]
fn eq2_verifies_42_identities() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = verify(&["--suite", "eq-2", "--m-range", "-10:10"], &path);
    assert_eq!(out.status.code(), Some(0));
    let r = read(&path);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let verified: u64 = checks
        .iter()
        .filter_map(|c| c["detail"]["identities_verified"].as_u64())
        .sum();
    assert_eq!(verified, 42);
    assert!(r["anchor"].as_str().is_some_and(|a| !a.is_empty()));
}

#[test]
fn negative_m_range_parses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = verify(&["--suite", "eq-2", "--m-range", "-3:3", "--trials", "4"], &path);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read(&path)["config"]["m-range"], serde_json::json!([-3, 3]));
}

#[test]
fn config_file_supplies_keys_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let path = dir.path().join("r.json");
    fs::write(
        &cfg,
        r#"{"suite": "ring-Z", "trials": 3, "seed": 9, "m-range": "-2:2"}"#,
    )
    .unwrap();
    let out = verify(&["--config", cfg.to_str().unwrap(), "--seed", "4"], &path);
    assert_eq!(out.status.code(), Some(0));
    let r = read(&path);
    assert_eq!(r["suite"], "ring-Z");
    assert_eq!(r["config"]["trials"], 3);
    assert_eq!(r["config"]["seed"], 4);

    fs::write(&cfg, r#"{"suite": "ring-Z", "bogus": 1}"#).unwrap();
    assert_eq!(
        verify(&["--config", cfg.to_str().unwrap()], &path).status.code(),
        Some(2)
    );
}

#[test]
fn list_suites_names_every_suite() {
    let out = nilaut(&["list-suites"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "group-axioms",
        "lemma-2.1",
        "lemma-2.2",
        "proposition-sigma",
        "eq-2",
        "xy-linearity",
        "walk",
        "one-step-down",
        "interp-M",
        "ring-Z",
        "endo-graph",
    ] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = [
        "--suite",
        "one-step-down",
        "--rank",
        "2",
        "--class",
        "3",
        "--trials",
        "5",
        "--seed",
        "3",
    ];
    assert_eq!(verify(&args, &a).status.code(), Some(0));
    assert_eq!(verify(&args, &b).status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn timing_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    verify(&["--suite", "ring-Z", "--trials", "2"], &path);
    assert!(read(&path)["wall_clock_ms"].is_null());
    verify(&["--suite", "ring-Z", "--trials", "2", "--timing"], &path);
    assert!(read(&path)["wall_clock_ms"].is_u64());
}

#[test]
fn unwritable_report_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("r.json");
    let out = verify(&["--suite", "ring-Z", "--trials", "2"], &path);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn sigma_example_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = [
        "--suite",
        "proposition-sigma",
        "--rank",
        "2",
        "--class",
        "2",
        "--trials",
        "50",
        "--seed",
        "7",
    ];
    let out = verify(&args, &path);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = read(&path);
    let names: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for want in ["necessity", "converse", "witness-trace"] {
        assert!(names.contains(&want), "{want}");
    }
}
