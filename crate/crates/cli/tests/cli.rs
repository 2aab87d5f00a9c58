use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whurwitz")).args(args).output().expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn double_example() {
    let v = json_out(&["double", "--weight", r#"{"kind":"exp"}"#, "--mu", "2", "--nu", "1,1", "--r", "1"]);
    assert_eq!(v["value"], "1/2");
    for route in ["brute", "classical", "tropical"] {
        let v = json_out(&["double", "--weight", r#"{"kind":"exp"}"#, "--mu", "2", "--nu", "1,1", "--r", "1", "--route", route]);
        assert_eq!(v["value"], "1/2", "{route}");
    }
}

#[test]
fn elliptic_example() {
    let w = r#"{"kind":"product-Gtilde","c":["1"]}"#;
    for route in ["shiftsym", "feynman", "types", "brute"] {
        let v = json_out(&["elliptic", "--weight", w, "--g", "2", "--dmax", "2", "--route", route]);
        assert_eq!(v["coeffs"], serde_json::json!(["0", "0", "4"]), "{route}");
    }
}

#[test]
fn elliptic_csv_has_two_columns() {
    let o = run(&["elliptic", "--weight", r#"{"kind":"exp"}"#, "--g", "2", "--dmax", "3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "d,N_d\r\n0,0\r\n1,0\r\n2,2\r\n3,16\r\n");
}

#[test]
fn quick_selftest_passes() {
    let v = json_out(&["selftest", "--level", "quick"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn input_errors_exit_two_with_json() {
    let o = run(&["double", "--weight", r#"{"kind":"exp"}"#, "--mu", "2", "--nu", "1", "--r", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["kind"], "SizeMismatch");

    let o = run(&["double", "--weight", r#"{"kind":"completed-cycles","r":1}"#, "--mu", "2", "--nu", "2", "--r", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["kind"], "IncompatibleDecoration");

    let o = run(&["double", "--weight", "{not json", "--mu", "2", "--nu", "2", "--r", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_table_is_header_only() {
    let o = run(&["covers", "--mu", "1,1", "--nu", "1,1", "--r", "0", "--connected", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "index,lambda,genus,aut,multiplicity\r\n");
}

#[test]
fn completed_cycles_value() {
    let v = json_out(&["completed-cycles", "--rcc", "2", "--mu", "2", "--nu", "2", "--s", "1"]);
    assert_eq!(v["value"], "7/24");
    let v = json_out(&["completed-cycles", "--weight", r#"{"kind":"completed-cycles","r":1}"#, "--mu", "2", "--nu", "1,1", "--s", "1"]);
    assert_eq!(v["value"], "1/2");
}

#[test]
fn chamber_fit_and_wall_crossing() {
    let w = r#"{"kind":"product-G","c":["1"]}"#;
    let v = json_out(&["poly", "--weight", w, "--g", "0", "--x", "1,3,-2,-2"]);
    assert!(v["validation"].as_array().unwrap().len() >= 5);
    assert!(v["degree"].as_u64().unwrap_or(0) <= v["degreeBound"].as_u64().unwrap());
    let v = json_out(&["wallcross", "--weight", w, "--lambda", "2", "--subset", "1,2", "--x", "2,-2,3,-3"]);
    assert_eq!(v["holds"], true);
}

#[test]
fn quasimodular_fit_from_file() {
    let dir = std::env::temp_dir().join(format!("whurwitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("series.json");
    let p = path.to_str().unwrap();
    let o = run(&["elliptic", "--weight", r#"{"kind":"exp"}"#, "--g", "2", "--dmax", "12", "--out", p]);
    assert!(o.status.success());
    let v = json_out(&["quasimod-fit", "--input", &format!("@{p}")]);
    assert_eq!(v["fit"]["coords"]["P^3"], "1/5184");
    assert!(v["fit"]["validated"].as_u64().unwrap() >= 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["covers", "--target", "elliptic", "--weight", r#"{"kind":"exp"}"#, "--g", "2", "--dmax", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["feynman", "--weight", r#"{"kind":"exp"}"#, "--g", "2", "--dmax", "5", "--per-diagram"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
