use std::path::Path;
use std::process::{Command, Output};

use qcube::io::WeightingJson;
use qcube::weighting::{apply_gauge, canonical_weighting, PhaseGauge, SimplexPoint};
use qcube::C;
use serde_json::{json, Value};

fn qcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcube")).args(args).env_remove("QCUBE_TOL").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_owned()
}

/// Gauge-transformed `c_t` for `n = 2`, `t = [1 - tau, tau]`, optionally with edge (00,01) overwritten.
fn square_weighting(tau: f64, first: Option<f64>) -> Value {
    let t = SimplexPoint::new(vec![1.0 - tau, tau]).unwrap();
    let g = PhaseGauge::new((0..4).map(|x| (x, C::from_polar(1.0, 0.9 * x as f64))).collect()).unwrap();
    let c = apply_gauge(&canonical_weighting(&t).unwrap(), &g).unwrap();
    let mut v = qcube::io::to_json_value(&WeightingJson::from(&c));
    if let Some(re) = first {
        v["values"][0] = json!({"i": 0, "j": 1, "re": re, "im": 0.0});
    }
    v
}

#[test]
fn selftest_passes_and_lists_suites() {
    let o = qcube(&["selftest", "--n", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let s = stdout(&o);
    for name in ["GP1", "GP2", "loop", "gauge", "fill-up"] {
        assert!(s.contains(name), "missing {name}");
    }
    assert!(s.trim_end().ends_with("overall: PASS"));
}

#[test]
fn rep_build_prints_one_matrix_per_vertex() {
    let o = qcube(&["rep", "build", "--t", "0.2,0.3,0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("p_")).count(), 8);
}

#[test]
fn weighting_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", &square_weighting(0.3, None));
    assert_eq!(code(&qcube(&["weighting", "check", "--file", &good])), 0);
    let bad = write(dir.path(), "bad.json", &square_weighting(0.3, Some(0.9)));
    let o = qcube(&["weighting", "check", "--file", &bad]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    let o = qcube(&["weighting", "check", "--file", &bad, "--tol", "10"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = dir.path().join("m.json");
    std::fs::write(&malformed, "{\"n\": 2, \"values\": [").unwrap();
    assert_eq!(code(&qcube(&["weighting", "check", "--file", malformed.to_str().unwrap()])), 2);
    let inf = dir.path().join("inf.json");
    std::fs::write(&inf, r#"{"n":1,"values":[{"i":0,"j":1,"re":1e999,"im":0}]}"#).unwrap();
    assert_eq!(code(&qcube(&["weighting", "check", "--file", inf.to_str().unwrap()])), 2);
    assert_eq!(code(&qcube(&["weighting", "check", "--file", "/nonexistent/w.json"])), 2);
    assert_eq!(code(&qcube(&["rep", "build", "--t", "0.5,0.6"])), 2);
    assert_eq!(code(&qcube(&["path", "canon", "--n", "2", "--base", "0", "--word", "0 5"])), 2);
    let o = qcube(&["rep", "build", "--frobnicate"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn tolerance_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qcube"))
        .args(["rep", "build", "--t", "0.5,0.5"])
        .env("QCUBE_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("tol 1.0e-6"));
    let o = Command::new(env!("CARGO_BIN_EXE_qcube")).args(["selftest", "--n", "1"]).env("QCUBE_TOL", "-1").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn path_canon_reports_sign() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = qcube(&["path", "canon", "--n", "3", "--base", "1", "--word", "2 1 0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("-[001; 0 1 2]"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["data"]["sign"], -1);
    assert_eq!(v["data"]["canonical"], json!({"n": 3, "base": 1, "indices": [0, 1, 2]}));
}

#[test]
fn classify_recovers_t() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.json", &square_weighting(0.3, None));
    let out = dir.path().join("c.json");
    let o = qcube(&["rep", "classify", "--file", &w, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let t: Vec<f64> = serde_json::from_value(v["data"][0]["t"].clone()).unwrap();
    assert!((t[0] - 0.7).abs() < 1e-12 && (t[1] - 0.3).abs() < 1e-12);
    let bad = write(dir.path(), "bad.json", &square_weighting(0.3, Some(0.9)));
    assert_eq!(code(&qcube(&["rep", "classify", "--file", &bad])), 1);
}

#[test]
fn intertwine_equivalent_and_inequivalent() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(code(&qcube(&["rep", "build", "--t", "0.3,0.7", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&qcube(&["rep", "build", "--t", "0.6,0.4", "--out", b.to_str().unwrap()])), 0);
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    assert_eq!(code(&qcube(&["rep", "intertwine", "--a", a, "--b", a])), 0);
    assert_eq!(code(&qcube(&["rep", "intertwine", "--a", a, "--b", b])), 1);
}

#[test]
fn fillup_writes_magic_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fill.json");
    let o = qcube(&["fillup", "--t", "0.2,0.3,0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("U_")).count(), 16);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!((v["data"]["magic"]["m"].as_u64(), v["data"]["magic"]["n"].as_u64()), (Some(4), Some(4)));
    assert_eq!(v["data"]["witness"].as_array().unwrap().len(), 4);
    assert_eq!(v["passed"], true);
}

#[test]
fn sweep_report_lists_every_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = qcube(&["sweep", "--n", "3", "--resolution", "4", "--report", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let points = v["data"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 15);
    assert!(points.iter().all(|p| p["dimension"] == p["expected_dimension"]));
}

#[test]
fn hypercube_info_counts() {
    let o = qcube(&["hypercube", "info", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("edges: 32") && s.contains("squares: 24"));
    assert_eq!(code(&qcube(&["hypercube", "info", "--n", "9"])), 2);
}
