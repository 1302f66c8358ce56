use std::process::{Command, Output};

use cyclofact::elasticity::{ElasticityCertificate, ScanTable};
use cyclofact::omega::{IntervalOmega, OmegaWitness};
use cyclofact::{MinimalPair, RationalBase};
use cyclofact_cli::{ErrorReport, FactorizationReport, LengthReport, MembershipReport};
use serde::de::DeserializeOwned;
use serde_json::Value;

fn cyclofact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclofact"))
        .args(args)
        .env_remove("CYCLOFACT_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = cyclofact(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Parses stdout as `T` and checks that re-serializing gives the same document.
fn round_trip<T: DeserializeOwned + serde::Serialize>(args: &[&str]) -> T {
    let out = cyclofact(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: T = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::to_value(&doc).unwrap();
    let original: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(again, original, "{args:?}");
    doc
}

fn error(args: &[&str]) -> (i32, ErrorReport) {
    let out = cyclofact(args);
    assert!(out.stdout.is_empty(), "{args:?}");
    let report = serde_json::from_slice(&out.stderr).unwrap();
    (out.status.code().unwrap(), report)
}

#[test]
fn lengths_of_nine() {
    let v = ok_json(&["lengths", "--q", "3/2", "--value", "9", "--enumerate"]);
    assert_eq!(v["min_length"], 3);
    assert_eq!(v["max_length"], 9);
    assert_eq!(v["elasticity"], "3");
    assert_eq!(v["length_set"], serde_json::json!([3, 4, 5, 6, 7, 8, 9]));
}

#[test]
fn integer_base_short_circuits() {
    let v = ok_json(&["lengths", "--q", "2", "--value", "9"]);
    assert_eq!((v["min_length"].clone(), v["max_length"].clone()), (9.into(), 9.into()));
    assert_eq!(v["elasticity"], "1");
}

#[test]
fn regime_mismatches_exit_one() {
    let (code, r) = error(&["antiprime", "--q", "3/2", "--k", "0", "--K", "2"]);
    assert_eq!(code, 1);
    assert_eq!(r.error, "regime");
    assert!(r.message.starts_with("--q"), "{}", r.message);
    let (code, r) = error(&["omega-interval", "--q", "5/2", "--atom", "1"]);
    assert_eq!((code, r.error.as_str()), (1, "regime"));
    let (code, _) = error(&["lengths", "--q", "1/2", "--value", "1"]);
    assert_eq!(code, 1);
    let (code, r) = error(&["antiprime", "--q", "1/3", "--k", "0", "--K", "2"]);
    assert_eq!(code, 1);
    assert!(r.message.contains("not atomic"));
}

#[test]
fn usage_errors_name_the_flag() {
    let (code, r) = error(&["lengths", "--q", "3/x", "--value", "9"]);
    assert_eq!((code, r.error.as_str()), (1, "usage"));
    assert!(r.message.contains("--q"));
    let (code, r) = error(&["lengths", "--q", "3/2", "--value", "9", "--bogus"]);
    assert_eq!(code, 1);
    assert!(r.message.contains("--bogus"));
    let (code, r) = error(&["construct-elasticity", "--q", "3/2", "--target", "2/3"]);
    assert_eq!(code, 1);
    assert!(r.message.contains("--target"));
    let (code, r) = error(&["lengths", "--q", "3/2", "--value", "7/4"]);
    assert_eq!((code, r.error.as_str()), (1, "not_member"));
}

#[test]
fn budget_exhaustion_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclofact"))
        .args(["lengths", "--q", "3/2", "--value", "9", "--enumerate"])
        .env("CYCLOFACT_ORACLE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let r: ErrorReport = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(r.error, "budget");

    let out = cyclofact(&["elasticity-scan", "--q", "3/2", "--bound", "20", "--scan-cap", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().last(), Some("manifest,partial,5,,"));
}

#[test]
fn documents_round_trip() {
    let pair: MinimalPair = round_trip(&["minimal-pair", "X^2 - 3X + 1"]);
    assert_eq!(pair.ell, 1u32.into());
    let pair: MinimalPair = round_trip(&["minimal-pair", "--rational", "3/2"]);
    assert_eq!(pair.ell, 2u32.into());
    let m: MembershipReport = round_trip(&["member", "--q", "3/2", "--value", "13/4"]);
    assert!(m.member);
    let m: MembershipReport = round_trip(&["member", "--q", "3/2", "--value", "7/4"]);
    assert!(!m.member && m.witness.is_none());
    let f: FactorizationReport = round_trip(&["factorize", "--q", "5/3", "--value", "25", "--enumerate"]);
    let base = RationalBase::from_parts(5, 3).unwrap();
    assert!(f.factorizations.unwrap().iter().all(|z| base.value_of(z) == f.value));
    let l: LengthReport = round_trip(&["lengths", "--q", "3/2", "--value", "9", "--enumerate"]);
    assert_eq!(l.length_set.unwrap().len(), 7);
    let c: ElasticityCertificate = round_trip(&["construct-elasticity", "--q", "3/2", "--target", "5/3", "--scan-cap", "200"]);
    assert!(c.check(&RationalBase::from_parts(3, 2).unwrap()).passed());
    let o: IntervalOmega = round_trip(&["omega-interval", "--q", "3/2", "--atom", "5/4"]);
    assert_eq!((o.omega, o.conductor), (4, 2));
    assert!(o.checks.passed());
    let w: OmegaWitness = round_trip(&["antiprime", "--q", "2/3", "--k", "0", "--K", "10"]);
    assert_eq!(w.threshold, 6);
    assert!(w.verify().passed());
    let t: ScanTable = round_trip(&["elasticity-scan", "--q", "3/2", "--bound", "9", "--output", "json"]);
    assert!(t.complete);
}

#[test]
fn scan_csv_layout() {
    let out = cyclofact(&["elasticity-scan", "--q", "3/2", "--bound", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "value_num,value_den,min_len,max_len,elasticity");
    for row in ["1,1,1,1,1", "3,2,1,1,1", "2,1,2,2,1", "9,4,1,1,1", "5,2,2,2,1", "3,1,2,3,3/2"] {
        assert!(lines.contains(&row), "missing {row}");
    }
    assert_eq!(*lines.last().unwrap(), format!("manifest,complete,{},,", lines.len() - 2));
}

#[test]
fn scan_output_independent_of_threads() {
    let dir = std::env::temp_dir().join(format!("cyclofact-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3", "8"] {
        let path = dir.join(format!("scan-{threads}.csv"));
        let out = cyclofact(&[
            "elasticity-scan", "--q", "5/3", "--bound", "40", "--threads", threads,
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(std::fs::read(&path).unwrap());
    }
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    assert!(outputs[0].len() > 1000);
}

#[test]
fn csv_is_scan_only() {
    let (code, r) = error(&["lengths", "--q", "3/2", "--value", "9", "--output", "csv"]);
    assert_eq!(code, 1);
    assert!(r.message.contains("--output"));
}
