use std::process::Command;

use goldie_core::group::Group;
use goldie_core::parse::{parse_group_word, parse_matrix};
use goldie_core::ring::RingInstance;
use goldie_core::scalar::Field;
use serde_json::Value;

fn verify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, text) = verify(args);
    (code, serde_json::from_str(&text).unwrap())
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn summary_matches_statuses() {
    for suite in ["group-conditions", "nastasescu", "bazhenov", "quotient", "gs-construction", "remark1-audit"] {
        let (code, r) = report(&[suite]);
        let checks = r["checks"].as_array().unwrap();
        let count = |s: &str| checks.iter().filter(|c| c["status"] == s).count() as u64;
        for s in ["pass", "fail", "exhausted"] {
            assert_eq!(r["summary"][s].as_u64().unwrap(), count(s), "{suite}");
        }
        assert!(checks.iter().all(|c| c["elapsed_ms"] == 0));
        assert_eq!(r["suite"], suite);
        assert_eq!(code, 0, "{suite}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(verify(&["bazhenov"]).0, 0);
    assert_eq!(verify(&["counterexample"]).0, 1);
    let exhausted = ["group-conditions", "--group", "dihedral-product", "--g", "s1 s2 s3", "--h", "r1 r2 r3", "--n-max", "5", "--m-max", "5"];
    assert_eq!(verify(&exhausted).0, 2);
    assert_eq!(verify(&["nope"]).0, 3);
    assert_eq!(verify(&["bazhenov", "--field", "fp:4"]).0, 3);
    assert_eq!(verify(&["group-conditions", "--group", "S3", "--g", "(1234)"]).0, 3);
    assert_eq!(verify(&["group-conditions", "--bogus"]).0, 3);
}

#[test]
fn group_witnesses_reverify() {
    let (_, r) = report(&["group-conditions", "--group", "S3"]);
    let s3 = Group::builtin_table("S3").unwrap();
    let w = &check(&r, "cond2")["witness"]["witness"];
    let g = parse_group_word(&s3, w["g"].as_str().unwrap()).unwrap();
    let h = parse_group_word(&s3, w["h"].as_str().unwrap()).unwrap();
    let n = w["n"].as_i64().unwrap();
    assert!(s3.commutes(&g, &s3.pow(&h, n)));
    assert!((1..n).all(|k| !s3.commutes(&g, &s3.pow(&h, k))));
    let w = &check(&r, "cond2prime")["witness"]["witness"];
    let (m, n) = (w["m"].as_i64().unwrap(), w["n"].as_i64().unwrap());
    assert_eq!(s3.mul(&g, &s3.pow(&h, m)), s3.mul(&s3.pow(&h, n), &g));
}

#[test]
fn census_exception_reverifies() {
    let (_, r) = report(&["counterexample"]);
    let d = Group::InfiniteDihedral;
    let inst = RingInstance::counterexample(d.clone(), d.parse_word("s").unwrap(), d.parse_word("r").unwrap(), Field::Rational).unwrap();
    let exceptions = check(&r, "census-scalar-units")["witness"]["exceptions"].as_array().unwrap();
    assert!(!exceptions.is_empty());
    for ex in exceptions {
        let u = parse_matrix(&inst, ex["representative"].as_str().unwrap()).unwrap();
        let v = parse_matrix(&inst, ex["inverse"].as_str().unwrap()).unwrap();
        assert_eq!(inst.mul(&u, &v), inst.one());
        assert_eq!(inst.mul(&v, &u), inst.one());
        assert_eq!(d.format(&inst.degree_of(&u).unwrap()), ex["degree"].as_str().unwrap());
    }
}

#[test]
fn text_format_and_out_file() {
    let (code, text) = verify(&["remark1-audit", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("remark1-bound")));
    let path = std::env::temp_dir().join(format!("verify-report-{}.json", std::process::id()));
    let (code, stdout) = verify(&["bazhenov", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["summary"]["pass"], 4);
    std::fs::remove_file(path).unwrap();
}
