//! End-to-end runs of the `mocktheta` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mocktheta")).args(args).env_remove("MOCKTHETA_DIGITS").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn coeff(v: &Value, i: usize) -> (i64, String, String) {
    let t = &v["coeffs"][i];
    (t[0].as_i64().unwrap(), t[1].as_str().unwrap().into(), t[2].as_str().unwrap().into())
}

#[test]
fn expand_sigma() {
    let v = json(&["expand", "sigma6", "--M", "5"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["denom"], 1);
    let got: Vec<_> = (0..5).map(|i| coeff(&v, i)).collect();
    let want = [(1, "1"), (2, "1"), (3, "2"), (4, "3"), (5, "3")];
    for ((e, n, d), (we, wn)) in got.iter().zip(want) {
        assert_eq!((*e, n.as_str(), d.as_str()), (we, wn, "1"));
    }
}

#[test]
fn expand_theta_uses_residue_class() {
    // n = 2, -22, 26 give 2 q^{4/48}, -22 q^{484/48}, 26 q^{676/48}
    let v = json(&["expand", "theta", "--N", "12", "--a", "2", "--M", "15"]);
    assert_eq!(v["denom"], 48);
    let got: Vec<_> = v["coeffs"].as_array().unwrap().iter().map(|t| (t[0].as_i64().unwrap(), t[1].as_str().unwrap().to_string())).collect();
    assert_eq!(got, vec![(4, "2".into()), (484, "-22".into()), (676, "26".into())]);
}

#[test]
fn expand_input_function() {
    let v = json(&["expand", "e61", "--M", "3"]);
    assert_eq!(coeff(&v, 0), (-1, "1".into(), "1".into()));
}

#[test]
fn theta_without_level_is_usage_error() {
    assert_eq!(run(&["expand", "theta"]).status.code(), Some(2));
}

#[test]
fn trace_congruence_failure_exits_2() {
    let out = run(&["trace", "--f", "e61", "--N", "12", "--D", "-43", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CONGRUENCE_FAIL"));
}

#[test]
fn trace_of_constant() {
    let v = json(&["trace", "--f", "const1", "--N", "1", "--D", "-3", "--r", "1"]);
    assert_eq!(v["schema"], 1);
    assert!(v["plus"][0].as_str().unwrap().starts_with("3.33333333333333333333"));
    assert_eq!(v["orbit_count_plus"], 1);
    assert_eq!(v["degenerate"], false);
}

#[test]
fn trace_sigma_coefficient() {
    // a_sigma(1) = 1 = -(1/4) * diff
    let v = json(&["--digits", "30", "trace", "--f", "e61", "--N", "12", "--D", "-44", "--r", "2"]);
    let d: f64 = v["diff_over_sqrt"][0].as_str().unwrap().parse().unwrap();
    assert!((d + 4.0).abs() < 1e-12);
}

#[test]
fn unknown_family_is_usage_error() {
    assert_eq!(run(&["verify", "--family", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["complete-check", "order4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_order7() {
    let v = json(&["--digits", "30", "verify", "--family", "order7", "--nmax", "8"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 24);
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert_eq!(v["pass"], true);
}

#[test]
fn complete_check_passes() {
    let v = json(&["--digits", "30", "complete-check", "order6", "--samples", "3"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--digits", "30", "complete-check", "order2", "--samples", "3", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_and_table_formats() {
    let out = run(&["--digits", "30", "--format", "csv", "verify", "--family", "order7", "--nmax", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,n,D,r,formula,series,diff,pass"));
    assert_eq!(lines.count(), 6);

    let out = run(&["--format", "table", "expand", "sigma6", "--M", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 5);
}

#[test]
fn digits_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_mocktheta"))
        .args(["verify", "--family", "order10", "--function", "X", "--nmax", "3"])
        .env("MOCKTHETA_DIGITS", "25")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["digits"], 25);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("mocktheta-cli-{}.json", std::process::id()));
    let out = run(&["expand", "f3", "--M", "4", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["id"], "f3");
    std::fs::remove_file(path).ok();
}
