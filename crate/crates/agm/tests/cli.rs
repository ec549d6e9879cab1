//! End-to-end tests of the `agm` binary: exit codes, JSON output, emitted
//! files, and the manifest written beside each artifact.

use std::process::Command;

fn agm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_agm"))
}

#[test]
fn lambda_reports_series_and_bruteforce_agreement() {
    let out = agm()
        .args(["lambda", "--n", "5", "--bruteforce"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["magnitudes_agree"], true);
}

#[test]
fn check_harmonic_frame_bias_holds() {
    let out = agm()
        .args(["check", "--frames-2d", "3", "--k", "3", "--ineq", "bias", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["check"], "bias");
    assert_eq!(v[0]["result"]["holds"], true);
}

#[test]
fn check_strong_violation_exits_two_and_writes_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("violations.jsonl");
    let out = agm()
        .args(["check", "--frames-2d", "4", "--k", "4", "--ineq", "strong"])
        .arg("--ledger")
        .arg(&ledger)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&ledger)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["inequality"], "strong");
    assert_eq!(lines[0]["n"], 4);
}

#[test]
fn frames_emits_tuple_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let tuple = dir.path().join("frame.json");
    let out = agm()
        .args(["frames", "--d", "2", "--n", "6", "--emit"])
        .arg(&tuple)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(tuple.exists());
    assert!(dir.path().join("frame.json.manifest.json").exists());
    // The emitted tuple round-trips through the check command.
    let out = agm()
        .args(["check", "--k", "2", "--ineq", "variance", "--file"])
        .arg(&tuple)
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn kaczmarz_writes_trace_and_summary_csv() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = agm()
        .args([
            "kaczmarz", "--rows", "harmonic", "--n", "12", "--d", "2", "--trials", "5",
            "--seed", "7", "--out",
        ])
        .arg(&trace)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(&trace).unwrap();
    assert!(body.starts_with("iter,trial,scheme,error"));
    let summary = std::fs::read_to_string(dir.path().join("trace_summary.csv")).unwrap();
    assert!(summary.starts_with("iter,scheme,median_error,mean_error,stderr"));
}

#[test]
fn wishart_reports_bounds_and_moments() {
    let out = agm()
        .args(["wishart", "--k", "1", "--r", "1", "--d", "1", "--samples", "1000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let diag = v["bounds"]["diag_bound"].as_f64().unwrap();
    assert!((diag - 3.0).abs() < 1e-9);
}

#[test]
fn bad_usage_exits_one() {
    let out = agm().args(["check", "--k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = agm()
        .args(["--threads", "zero", "lambda", "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
