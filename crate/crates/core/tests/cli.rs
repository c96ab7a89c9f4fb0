use std::process::{Command, Output};

use serde_json::Value;

fn fgzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgzeta")).args(args).env_remove("FGZETA_PRECISION").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn close_to(field: &Value, want: f64, tol: f64) -> bool {
    let got: f64 = field.as_str().unwrap().parse().unwrap();
    (got - want).abs() <= tol
}

#[test]
fn cumulants_at_two() {
    let o = fgzeta(&["cumulants", "--pmax", "2", "--order", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(close_to(&v["a"]["2"], 1.980_100_780_385_627_6, 1e-15));
    assert!(close_to(&v["normalized"]["2"], 1.0, 1e-60));
    assert_eq!(v["P"], 2);
    let csv = stdout(&fgzeta(&["cumulants", "--pmax", "2", "--order", "4"]));
    assert!(csv.starts_with("P,order,a0,a2,a4,sigma,kappa4,gaussianDeviation\n2,4,"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(fgzeta(&["cumulants", "--order", "4"]).status.code(), Some(2));
    assert_eq!(fgzeta(&["cumulants", "--pmax", "10", "--order", "5"]).status.code(), Some(2));
    assert_eq!(fgzeta(&["frobnicate"]).status.code(), Some(2));
    let low = fgzeta(&["cumulants", "--pmax", "1", "--order", "4"]);
    assert_eq!(low.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&low.stderr).contains("below 2"));
}

#[test]
fn fluct_closes_and_reports_starvation() {
    let o = fgzeta(&["fluct", "--m", "1", "--pmax", "10000", "--quad-tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,P,total,main,boundary,bulkFluct,residual,E_at_P"));
    assert!(lines.next().unwrap().starts_with("1,10000,"));

    let two = fgzeta(&["fluct", "--m", "1", "--pmax", "2"]);
    let row = stdout(&two);
    let total: f64 = row.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!((total - 1.980_100_780_385_627_6).abs() < 1e-15);

    let starved = fgzeta(&["--precision", "64", "fluct", "--m", "1", "--pmax", "10000", "--quad-tol", "1e-30"]);
    assert_eq!(starved.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&starved.stderr).contains("not met"));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fgzeta"))
        .args(["cumulants", "--pmax", "10", "--order", "2", "--format", "json"])
        .env("FGZETA_PRECISION", "64")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let short = v["sigma"].as_str().unwrap().len();
    let long = {
        let v: Value = serde_json::from_str(&stdout(&fgzeta(&["cumulants", "--pmax", "10", "--order", "2", "--format", "json"]))).unwrap();
        v["sigma"].as_str().unwrap().len()
    };
    assert!(short < long);
}

#[test]
fn fg_check_passes_and_prints_mercator() {
    let o = fgzeta(&["fg-check", "--order", "5", "--trials", "3", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1, -1/2, 1/3, -1/4, 1/5"));
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    assert_eq!(fgzeta(&["fg-check", "--order", "40"]).status.code(), Some(2));
}

#[test]
fn scan_emits_rows_and_fits() {
    let o = fgzeta(&["scan", "--pmin", "64", "--pmax", "8192", "--grid", "geometric:8", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 9);
    let fits: Vec<&str> = text.lines().filter(|l| l.starts_with("#fit")).collect();
    assert_eq!(fits.len(), 3);
    let ps: Vec<u64> = rows[1..].iter().map(|r| r.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(ps.windows(2).all(|w| w[0] < w[1]));
    let empty = fgzeta(&["scan", "--pmin", "5", "--pmax", "7", "--grid", "pow2"]);
    assert_eq!(empty.status.code(), Some(1));
}

#[test]
fn scan_writes_to_file() {
    let path = std::env::temp_dir().join(format!("fgzeta-scan-{}.json", std::process::id()));
    let o = fgzeta(&["scan", "--pmax", "64", "--order", "4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["fits"].as_array().unwrap().len(), 3);
    let _ = std::fs::remove_file(path);
}

#[test]
fn evenize_round_trip() {
    let dir = std::env::temp_dir().join(format!("fgzeta-even-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    std::fs::write(&input, r#"{"order":3,"ring":"rational","coeffs":["0","1","1","1"]}"#).unwrap();
    let first = stdout(&fgzeta(&["evenize", "--in", input.to_str().unwrap()]));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["xiLog"]["coeffs"], serde_json::json!(["0", "0", "1", "0"]));
    assert_eq!(v["oddRemoved"]["coeffs"], serde_json::json!(["0", "1", "0", "1"]));

    let again = dir.join("again.json");
    std::fs::write(&again, &first).unwrap();
    let second: Value = serde_json::from_str(&stdout(&fgzeta(&["evenize", "--in", again.to_str().unwrap()]))).unwrap();
    assert_eq!(second["xiLog"], v["xiLog"]);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"order":0,"ring":"octonion","coeffs":["1"]}"#).unwrap();
    assert_eq!(fgzeta(&["evenize", "--in", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(fgzeta(&["evenize", "--in", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(1));
    let _ = std::fs::remove_dir_all(dir);
}
