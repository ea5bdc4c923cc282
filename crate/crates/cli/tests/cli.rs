use std::process::{Command, Output};

use serde_json::Value;

fn qdeform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdeform")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_canonical_forms() {
    let o = qdeform(&["expand", "rn", "n=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "u*x^2 + (1+q)*x*y + v*y^2");
    assert_eq!(stdout(&qdeform(&["expand", "hn", "n=0"])).trim_end(), "1");
    assert_eq!(stdout(&qdeform(&["expand", "hn", "n=2"])).trim_end(), "1 + (1+q)*x + x^2");
    assert_eq!(stdout(&qdeform(&["expand", "sw", "n=1"])).trim_end(), "1 + q*x");
    assert_eq!(stdout(&qdeform(&["expand", "cauchy", "n=2"])).trim_end(), "x^2 + (-1-q)*x*y + q*y^2");
    assert_eq!(stdout(&qdeform(&["expand", "rn", "n=2", "u=1", "v=q"])).trim_end(), "x^2 + (1+q)*x*y + q*y^2");
}

#[test]
fn expand_series() {
    let o = qdeform(&["expand", "eq_deformed", "u=0", "--order", "4"]);
    assert_eq!(stdout(&o).trim_end(), "1 + (1/(1-q))*z + O(deg 5)");
    let o = qdeform(&["expand", "phi", "r=1", "s=0", "u=1", "--order", "1", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "series");
    assert_eq!(v["order"], 1);
    assert_eq!(v["text"], "1 + ((1-a1)/(1-q))*z + O(deg 2)");
}

#[test]
fn exton_needs_scale_two() {
    let o = qdeform(&["expand", "exton", "n=1", "--scale", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q^(1/2)"));
    let o = qdeform(&["expand", "exton", "n=2", "--scale", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "x^2 + (1+q)*x*y + q^(1/2)*y^2");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["expand", "rn"][..],
        &["expand", "rn", "n=x"],
        &["expand", "hn", "n=2", "k=1"],
        &["expand", "nosuch", "n=1"],
        &["verify", "no.such.id"],
        &["verify"],
        &["verify", "--all", "--jobs", "0"],
        &["verify", "rn.qdiff", "--family", "n=3..1"],
    ] {
        assert_eq!(qdeform(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn list_filters() {
    let o = qdeform(&["list", "mehler.", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    let o = qdeform(&["list", "no.such."]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let all = stdout(&qdeform(&["list"]));
    assert!(all.lines().count() >= 45);
    assert!(all.lines().any(|l| l.starts_with("exton_op.phi54") && l.contains("scale 2")));
}

#[test]
fn verify_single_entry_json() {
    let o = qdeform(&["verify", "genfunc.qbinomial", "--order", "8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let a = v.as_array().unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!(a[0]["status"], "verified");
    assert_eq!(a[0]["order"], 8);
    assert!(a[0]["first_mismatch"].is_null());
}

#[test]
fn family_override_is_echoed() {
    let o = qdeform(&["verify", "rn.qdiff", "--family", "n=2..4", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["family_ranges"]["n"], serde_json::json!([2, 4]));
    assert_eq!(v[0]["status"], "verified");
}

#[test]
fn scale_one_skips_with_reason() {
    let o = qdeform(&["verify", "--all", "--prefix", "exton_op.", "--scale", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v.as_array().unwrap() {
        assert_eq!(r["status"], "skipped");
        assert!(r["reason"].as_str().is_some_and(|s| s.contains("scale")));
    }
}

#[test]
fn errata_run_reports_mismatches() {
    let o = qdeform(&["verify", "--all", "--errata", "--prefix", "errata.phi12", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("errata.phi12_transform_sign"));
    assert!(text.contains("MISMATCH at "));
}

#[test]
fn verify_all_alias_matches() {
    let a = qdeform(&["verify-all", "heine.", "--order", "4"]);
    let b = qdeform(&["verify", "--all", "--prefix", "heine.", "--order", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
