use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn heatsym(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_heatsym"));
    c.args(args).env_remove("HEATSYM_THREADS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn flat_density_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "flat2.json", r#"{"n": 2}"#);
    let out = heatsym(&["index-density", "--curvature", &f], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["density"]["mantissa"], serde_json::json!(["0", "0", "0", "0"]));
    assert_eq!(r["pass"], Value::Bool(true));
}

#[test]
fn broken_bianchi_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", r#"{"n": 4, "riemann": [[1, 2, 3, 4, "1"]]}"#);
    let out = heatsym(&["index-density", "--curvature", &f], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Bianchi"));
}

#[test]
fn spectral_flow_winding_one() {
    let out = heatsym(&["spectral-flow", "--winding", "1", "--cutoff", "64"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["sf"], 1);
    assert_eq!(r["aps"], 1);
    assert_eq!(r["match"], true);
}

#[test]
fn twisted_four_manifold_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{"n": 4, "riemann": [[1,2,1,2,"1/2"], [3,4,3,4,"-1"], [1,3,1,3,"2"]],
                   "twist": {"rank": 1, "F": [[1, 2, [[["0", "1"]]]], [3, 4, [[["0", "-2"]]]]]}}"#;
    let f = write(dir.path(), "c.json", body);
    let a = heatsym(&["index-density", "--curvature", &f], &[]);
    let b = heatsym(&["index-density", "--curvature", &f], &[("HEATSYM_THREADS", "1")]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["routes"].as_array().unwrap().len() == 2);
}

#[test]
fn even_component_hand_value() {
    // φ₂(e_{(−1,−1)}, e_{(1,0)}, e_{(0,1)}) = (2iπ)^{−1}/2!·(2πi)²·det(I) = iπ
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "t.json",
        r#"{"dim": 2, "functions": [[[[-1, -1], ["1"]]], [[[1, 0], ["1"]]], [[[0, 1], ["1"]]]]}"#,
    );
    let out = heatsym(&["cm-even", "--input", &f], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json(&out)["value"]["float"];
    assert!(v[0].as_f64().unwrap().abs() < 1e-15);
    assert!((v[1].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn odd_residual_and_pairing() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", r#"{"dim": 1, "functions": [[[[2], ["1"]]], [[[-1], ["3"]]], [[[1], ["0", "1", "0", "0"]]]]}"#);
    let out = heatsym(&["cm-odd", "--input", &t], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"][0]["name"], "cocycle");
    let u = write(dir.path(), "u.json", r#"{"dim": 1, "matrix": [[[[[3], ["1"]]]]]}"#);
    let out = heatsym(&["pair", "--input", &u], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"]["mantissa"][0], "3");
    let bad = write(dir.path(), "b.json", r#"{"dim": 1, "matrix": [[[[[3], ["2"]]]]]}"#);
    assert_eq!(heatsym(&["pair", "--input", &bad], &[]).status.code(), Some(2));
}

#[test]
fn config_file_rejects_unknown_fields() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "cfg.json", r#"{"command": "spectral-flow", "winding": 1, "verbose": true}"#);
    assert_eq!(heatsym(&["run", "--config", &c], &[]).status.code(), Some(2));
}

#[test]
fn config_file_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "s2.json", r#"{"n": 2, "riemann": [[1, 2, 1, 2, "1"]]}"#);
    let c = write(dir.path(), "cfg.json", r#"{"command": "heat-coeffs", "curvature": "s2.json", "output": "out.json"}"#);
    let out = heatsym(&["run", "--config", &c], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("out.json")).unwrap()).unwrap();
    // a₁ = (1/3)(4π)^{−1}
    assert_eq!(r["coefficients"][1]["value"][0]["matrix"][0][0]["mantissa"][0], "1/12");
}

#[test]
fn bad_thread_count() {
    let out = heatsym(&["spectral-flow", "--winding", "0"], &[("HEATSYM_THREADS", "many")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fit.csv");
    let out = heatsym(&["verify-all", "--csv", csv.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(ids, ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"]);
    let mut rows = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(rows.headers().unwrap(), vec!["t", "trace", "fit"]);
    assert_eq!(rows.records().count(), 40);
}
