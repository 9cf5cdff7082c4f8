use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toeplitz-ladder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn det_lu_hand_value() {
    let v = json(&[
        "det", "--symbol", "fh", "--alpha", "1", "--beta", "0", "--n", "2", "--method", "lu",
    ]);
    let value = v["results"][0]["value"][0].as_f64().unwrap();
    assert!((value - 3.0 / (16.0 * PI * PI)).abs() < 1e-16);
    assert_eq!(v["results"][0]["value"][1].as_f64().unwrap(), 0.0);
}

#[test]
fn det_closed_constant_weight() {
    let v = json(&[
        "det", "--symbol", "fh", "--alpha", "0", "--beta", "0", "--n", "5", "--method", "closed",
    ]);
    let value = v["results"][0]["value"][0].as_f64().unwrap();
    assert!((value - (2.0 * PI).powi(-5)).abs() < 1e-18);
}

#[test]
fn det_methods_agree() {
    for args in [["--alpha", "0.5", "--beta", "0"], ["--alpha", "2", "--beta", "1"]] {
        let mut values = Vec::new();
        for method in ["lu", "product", "closed"] {
            let mut a = vec!["det", "--symbol", "fh", "--n", "7", "--method", method];
            a.extend(args);
            values.push(json(&a)["results"][0]["value"][0].as_f64().unwrap());
        }
        for v in &values[1..] {
            assert!((v - values[0]).abs() <= 1e-9 * values[0].abs(), "{values:?}");
        }
    }
}

#[test]
fn verify_dp2_passes() {
    assert_eq!(code(&["verify", "--suite", "dp2", "--symbol", "bessel", "--t", "2"]), 0);
}

#[test]
fn verify_reports_failures_with_exit_one() {
    let out = run(&[
        "verify",
        "--suite",
        "pole",
        "--symbol",
        "poles",
        "--t",
        "1",
        "--pole=-0.5:2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL pole_lambda_difference n=0"), "{stderr}");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(false));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["det", "--symbol", "bessel", "--n", "2"]), 2);
    assert_eq!(
        code(&["det", "--symbol", "bessel", "--t", "1", "--n", "2", "--method", "closed"]),
        2
    );
    assert_eq!(code(&["verify", "--suite", "nonsense", "--symbol", "fh"]), 2);
    assert_eq!(code(&["verify", "--suite", "dp2", "--symbol", "fh"]), 2);
    assert_eq!(code(&["moments", "--symbol", "fh"]), 2);
    assert_eq!(code(&["det", "--symbol", "fh", "--n", "2", "--quad-points", "0"]), 2);
}

#[test]
fn domain_errors_exit_three() {
    assert_eq!(code(&["det", "--symbol", "fh", "--alpha", "-0.7", "--n", "2"]), 3);
    assert_eq!(
        code(&["moments", "--symbol", "bessel", "--t", "0", "--max-order", "2"]),
        3
    );
    assert_eq!(
        code(&[
            "moments",
            "--symbol",
            "poles",
            "--t",
            "1",
            "--pole=-0.5:1",
            "--max-order",
            "2"
        ]),
        3
    );
}

#[test]
fn json_envelope_fields() {
    let v = json(&["opuc", "--symbol", "bessel", "--t", "2", "--n-max", "3"]);
    for key in ["command", "symbol", "results", "tolerances", "pass", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "opuc");
    assert_eq!(v["symbol"]["family"], "bessel");
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
    assert!(v["tolerances"].as_object().unwrap().len() > 3);
}

#[test]
fn csv_and_text_formats() {
    let out = run(&[
        "moments",
        "--symbol",
        "fh",
        "--alpha",
        "1",
        "--max-order",
        "2",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,re,im"));
    assert_eq!(lines.count(), 5);

    let out = run(&[
        "verify", "--suite", "ladder", "--symbol", "fh", "--alpha", "1", "--point", "2:0", "--format", "text",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("identity"));
    assert!(text.contains("2+0i") && !text.contains('"'));
}

#[test]
fn sample_points_override() {
    let v = json(&[
        "verify",
        "--suite",
        "ladder",
        "--symbol",
        "bessel",
        "--t",
        "1",
        "--n-max",
        "2",
        "--point=-0.5:0.3",
    ]);
    let entries = v["results"]["entries"].as_array().unwrap();
    let at: Vec<&Value> = entries.iter().map(|e| &e["point"]).filter(|p| p.is_array()).collect();
    assert!(!at.is_empty());
    for p in at {
        assert_eq!(p[0].as_f64(), Some(-0.5));
        assert_eq!(p[1].as_f64(), Some(0.3));
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["golden", "--n-max", "6", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["opuc", "--symbol", "poles", "--t", "1", "--pole=-0.5:2", "--n-max", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disc.json");
    let out = run(&[
        "discriminant",
        "--alpha",
        "1",
        "--beta",
        "0.5",
        "--n",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "discriminant");

    let bad = dir.path().join("missing").join("x.json");
    assert_eq!(
        code(&[
            "asympt",
            "--alpha",
            "1",
            "--beta",
            "0",
            "--n-max",
            "3",
            "--out",
            bad.to_str().unwrap()
        ]),
        2
    );
}

#[test]
fn discriminant_routes_agree() {
    let closed = json(&[
        "discriminant",
        "--alpha",
        "0.5",
        "--beta",
        "0.5",
        "--n",
        "4",
        "--method",
        "closed",
    ]);
    let res = json(&[
        "discriminant",
        "--alpha",
        "0.5",
        "--beta",
        "0.5",
        "--n",
        "4",
        "--method",
        "resultant",
    ]);
    let a = (
        closed["results"][0]["value"][0].as_f64().unwrap(),
        closed["results"][0]["value"][1].as_f64().unwrap(),
    );
    let b = (
        res["results"][0]["value"][0].as_f64().unwrap(),
        res["results"][0]["value"][1].as_f64().unwrap(),
    );
    let scale = a.0.hypot(a.1);
    assert!((a.0 - b.0).hypot(a.1 - b.1) <= 1e-8 * scale, "{a:?} vs {b:?}");
}

#[test]
fn dp2_reports_precision() {
    let v = json(&["dp2", "--t", "2", "--n-max", "6", "--digits", "60"]);
    assert!(v["results"]["precision_digits"].as_u64().unwrap() >= 60);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert!(r["abs_diff"].as_f64().unwrap() < 1e-12);
    }
}
