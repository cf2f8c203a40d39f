// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

use serde_json::Value;

fn phaselab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phaselab"))
        .args(args)
        .env_remove("PHASELAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mermin_exit_codes() {
    let stab = phaselab(&["--json", "mermin"]);
    assert_eq!(stab.status.code(), Some(3));
    assert_eq!(json(&stab)["verified"], true);

    let spek = phaselab(&["--theory", "spek", "--json", "mermin"]);
    assert_eq!(spek.status.code(), Some(0));
    assert!(json(&spek)["certificate"].is_null());
}

#[test]
fn lhv_verdicts() {
    let stab = phaselab(&["--json", "lhv"]);
    assert_eq!(stab.status.code(), Some(3));
    assert_eq!(json(&stab)["verdict"], "infeasible");

    let spek = phaselab(&["--theory", "spek", "--json", "lhv", "--mode", "poss"]);
    assert_eq!(spek.status.code(), Some(0));
    assert_eq!(json(&spek)["verdict"], "feasible");
}

#[test]
fn unknown_theory_is_rejected() {
    let out = phaselab(&["--theory", "qubit", "mermin"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown theory"));
}

#[test]
fn seed_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_phaselab"))
        .args(["--json", "spider-test", "--trials", "2", "--arity", "1"])
        .env("PHASELAB_SEED", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["observables"]["Z"]["seed"], 7);
}

#[test]
fn report_writes_json_and_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["report", "--spider-trials", "2", "--skip-arity-three", "--out", path.to_str().unwrap()];
    let out = phaselab(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let first = std::fs::read_to_string(&path).unwrap();
    let report: Value = serde_json::from_str(&first).unwrap();
    assert!(report.get("runtime").is_none_or(Value::is_null));
    assert!(dir.path().join("report.txt").exists());

    phaselab(&args);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}
