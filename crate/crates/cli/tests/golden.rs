mod common;

use common::{check_golden, fixture, qclaim, SUBCOMMANDS};

#[test]
fn every_subcommand_matches_its_golden_report() {
    for sub in SUBCOMMANDS {
        check_golden(sub).unwrap();
    }
}

#[test]
fn malformed_json_exits_2_without_a_report() {
    let path = fixture("malformed");
    let out = qclaim(&["price", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "validation");
}

#[test]
fn kind_mismatch_and_missing_file_are_validation_errors() {
    let path = fixture("ks");
    let out = qclaim(&["price", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = qclaim(&["ks", "--scenario", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rank_deficient_calibration_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cal.json");
    std::fs::write(&path, r#"{"n": 2, "bond_price": 0.9, "quotes": [{"claim": {"payouts": [1, 0]}, "price": 0.4}]}"#).unwrap();
    let out = qclaim(&["calibrate", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn out_flag_writes_report_and_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let path = fixture("returns");
    let out = qclaim(&["returns", "--scenario", path.to_str().unwrap(), "--out", report.to_str().unwrap(), "--pretty"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("gross return"));
    assert_eq!(std::fs::read(&report).unwrap(), std::fs::read(common::golden("returns")).unwrap());
}

#[test]
fn seed_flag_overrides_scenario_seed() {
    let path = fixture("optimize");
    let out = qclaim(&["optimize", "--scenario", path.to_str().unwrap(), "--seed", "11"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 11);
}

#[test]
fn tolerance_scale_must_be_positive() {
    let path = fixture("ks");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_qclaim"))
        .args(["ks", "--scenario", path.to_str().unwrap()])
        .env("QCLAIM_TOL_SCALE", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
