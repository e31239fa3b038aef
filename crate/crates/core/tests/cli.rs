use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn realgauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realgauge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write_config(name: &str, body: &str) -> String {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn scenario_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name).to_string_lossy().into_owned()
}

#[test]
fn bk2_scenario_json() {
    let out = realgauge(&["run", "--scenario", "bk2_example"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["runs"][0]["analyses"]["lift"]["traceForm"], serde_json::json!(["2", "-2*x", "-2*y", "2*x*y"]));
    assert_eq!(v["runs"][1]["analyses"]["lift"]["liftable"], serde_json::json!(["(-,+)"]));
    assert_eq!(v["runs"][0]["analyses"]["nil"]["table"].as_array().unwrap().len(), 4);
}

#[test]
fn m6_scenario_reports_indices() {
    let out = realgauge(&["run", "--scenario", "m6_index_example", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cosetIndex: 16"));
    assert!(text.contains("cosetIndex: 13"));
    assert!(text.contains("erratum: psi"));
}

#[test]
fn config_runs_are_deterministic() {
    let path = scenario_file("hamilton_2x2.json");
    let a = realgauge(&["run", &path, "--samples", "4"]);
    let b = realgauge(&["run", &path, "--samples", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = realgauge(&["run", &path, "--samples", "4", "--seed", "8"]);
    assert_eq!(json(&c)["seed"], Value::from(8));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn quaternion_division_config() {
    let out = realgauge(&["run", &scenario_file("quatdiv_gamma.json"), "--samples", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["runs"][0]["analyses"]["nil"]["nil"], serde_json::json!(["(-,+)", "(+,-)", "(+,+)"]));
    assert_eq!(v["runs"][0]["analyses"]["wadth"]["coset_index"], Value::from(4));
}

#[test]
fn analysis_error_gives_nonzero_exit_and_full_report() {
    let path = write_config(
        "nil_on_matrix.json",
        r#"{"vars":["x"],"algebra":{"kind":"MATRIX","eKind":"BASE","form":["1","x"]},"ordering":"ALL","analyses":["nil","lift"]}"#,
    );
    let out = realgauge(&["run", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["errors"], Value::from(1));
    assert!(v["runs"][0]["analyses"]["nil"]["error"].is_string());
    assert_eq!(v["runs"][0]["analyses"]["lift"]["matches"], Value::Bool(true));
}

#[test]
fn config_error_names_location() {
    let path = write_config(
        "bad_form.json",
        r#"{"vars":["x"],"algebra":{"kind":"MATRIX","eKind":"BASE","form":["1","x*("]},"ordering":[1]}"#,
    );
    let out = realgauge(&["run", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("algebra.form[1]"));
    let missing = realgauge(&["run", "/nonexistent/config.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn empty_analyses_give_empty_report() {
    let path = write_config("empty.json", r#"{"vars":[],"algebra":{"kind":"MATRIX","eKind":"COMPLEX","form":["1"]},"ordering":"ALL"}"#);
    let out = realgauge(&["run", &path]);
    assert!(out.status.success());
    assert_eq!(json(&out)["runs"][0]["analyses"], serde_json::json!({}));
}
