//! The `slce` binary: outputs, exit codes and the stored fixtures.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn slce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slce")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = slce(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    fs::read_to_string(path).unwrap()
}

#[test]
fn seq_text_and_autocorrelation() {
    let text = stdout(&["seq", "-p", "5", "-m", "1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "1100");
    assert!(lines[2].contains("weight 2"));
    assert_eq!(stdout(&["seq", "-p", "5", "--autocorr"]), "tau,c_tau\n0,4\n1,0\n2,-4\n3,0\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["seq", "-p", "7", "--json"])).unwrap();
    assert_eq!(json["weight"], 3);
    assert_eq!(json["period"], 6);
}

#[test]
fn even_prime_is_a_usage_error() {
    let out = slce(&["seq", "-p", "2", "-m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must be odd"));
    assert_eq!(slce(&["predict", "-p", "7"]).status.code(), Some(2));
    assert_eq!(slce(&["predict", "-p", "7", "-m", "4", "-k", "4"]).status.code(), Some(2));
}

#[test]
fn gcd_fixtures() {
    for (p, m) in [(5, 2), (3, 4), (5, 4), (7, 4), (3, 6), (5, 6), (3, 8)] {
        let (p, m) = (p.to_string(), m.to_string());
        let out = stdout(&["gcd", "-p", &p, "-m", &m]);
        assert_eq!(out, fixture(&format!("gcd_{p}_{m}.txt")), "{p}^{m}");
    }
    let out = stdout(&["gcd", "-p", "5", "-m", "2"]);
    assert!(out.contains("gcd: (x+1)^4\n"));
    assert!(out.contains("linear complexity: 20 = 24 - 4"));
}

#[test]
fn predict_fixtures() {
    for (p, m, k) in [("13", "11", "23"), ("19", "2", "5"), ("7", "4", "5")] {
        let out = stdout(&["predict", "-p", p, "-m", m, "-k", k, "--json"]);
        assert_eq!(out, fixture(&format!("predict_{p}_{m}_{k}.json")));
    }
    let json: serde_json::Value = serde_json::from_str(&fixture("predict_13_11_23.json")).unwrap();
    assert_eq!(json["regime"], "index2");
    assert_eq!(json["params"]["h"], 3);
    assert_eq!(json["params"]["a"], 74);
    assert_eq!(json["divides"], true);
    let json: serde_json::Value = serde_json::from_str(&fixture("predict_7_4_5.json")).unwrap();
    assert_eq!(json["divides"], false);
    assert_eq!(json["params"]["t"], 2);
    assert_eq!(json["params"]["s"], 1);
}

#[test]
fn no_closed_form_is_reported() {
    // ord_13(3) = 3, index 4, and no power of 3 is -1 mod 13.
    let out = slce(&["predict", "-p", "3", "-m", "3", "-k", "13"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no closed form"));
}

#[test]
fn jacobi_fixture() {
    let out = stdout(&["jacobi", "-p", "19", "-m", "2", "-k", "5", "--json"]);
    let got: serde_json::Value = serde_json::from_str(&out).unwrap();
    let want: serde_json::Value = serde_json::from_str(&fixture("jacobi_19_2_5.json")).unwrap();
    for key in ["p", "m", "q", "modulus", "alpha", "k", "basis", "coeffs", "eq3", "norm"] {
        assert_eq!(got[key], want[key], "{key}");
    }
    assert_eq!(got["coeffs"], serde_json::json!([19, 0, 0, 0]));
    assert_eq!(got["gauss"]["identity_holds"], true);
}

#[test]
fn verify_fixtures_and_exit_codes() {
    for (p, m, k) in [("5", "2", "3"), ("3", "6", "7")] {
        let out = stdout(&["verify", "-p", p, "-m", m, "-k", k, "--json"]);
        assert_eq!(out, fixture(&format!("verify_{p}_{m}_{k}.json")));
    }
    let out = stdout(&["verify", "-p", "13", "-m", "11", "-k", "23", "--predict-only", "--json"]);
    assert_eq!(out, fixture("verify_13_11_23_predict_only.json"));
    assert!(out.contains("skipped: q = 13^11 infeasible"));

    let out = slce(&["verify", "-p", "13", "-m", "11", "-k", "23"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));
}

#[test]
fn verify_csv() {
    let out = stdout(&["verify", "-p", "3", "-m", "6", "--csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("q,p,m,k,regime,predicted,direct,factor,criterion,factor_divides,match"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn grid_is_deterministic() {
    let a = stdout(&["grid", "--q-max", "400", "--json"]);
    let b = stdout(&["grid", "--q-max", "400", "--json"]);
    assert_eq!(a, b);
    let text = stdout(&["grid", "--q-max", "400"]);
    assert!(text.ends_with("mismatches: 0\n"));
}
