//! End-to-end tests of the `stabcert` binary: exit codes, report shapes,
//! determinism of the emitted JSON, and the numeric content of the shipped
//! worked example.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    assert_eq!(doc["meta"]["tool"], "stabcert");
    doc["report"].clone()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn analyze_certifies_the_shipped_example() {
    let spec = data("example1.spec.json");
    let out = run(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);

    let criteria = rep["criteria"].as_array().unwrap();
    let by_label = |label: &str| {
        criteria
            .iter()
            .find(|c| c["label"] == label)
            .unwrap_or_else(|| panic!("missing {label}"))
    };
    assert_eq!(by_label("l1")["feasible"], true);
    assert_eq!(by_label("balanced_p2")["feasible"], false);
    assert_eq!(by_label("balanced_p3")["feasible"], false);

    let star = by_label("l1_max_rate")["epsilon"].as_f64().unwrap();
    let expected = (11.0 - 117.0f64.sqrt()) / 2.0;
    assert!((star - expected).abs() <= 1e-6, "eps* = {star}");

    assert_eq!(rep["simulation"]["consistency"], "pass");
    assert_eq!(rep["simulation"]["saturated"], false);

    // the transform block carries exponent data for each swept p
    let t = rep["transforms"].as_array().unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t[0]["p"], 2.0);
    assert_eq!(t[0]["alpha_star"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_output_is_deterministic() {
    let spec = data("example1.spec.json");
    let a = run(&["analyze", spec.to_str().unwrap()]);
    let b = run(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());

    // --out writes the same bytes that went to stdout
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let c = run(&[
        "analyze",
        spec.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&c), 0);
    assert_eq!(std::fs::read(&out_path).unwrap(), c.stdout);
}

#[test]
fn analyze_pins_the_decoupled_scalar_rate() {
    // one node, no coupling: the row is (eps - d) + G|a|, so the maximal
    // certified rate is exactly d - G|a|
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("scalar.json");
    std::fs::write(
        &spec,
        r#"{"n": 1, "omega": 1.0, "d": [{"c0": 3.0}], "a": [[{"c0": 0.5}]],
            "b": [[{"c0": 0.0}]], "inputs": [{"c0": 0.0}], "tau": [[0.0]],
            "G": [1.0], "F": [1.0]}"#,
    )
    .unwrap();
    let out = run(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    let star = rep["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["label"] == "l1_max_rate")
        .unwrap()["epsilon"]
        .as_f64()
        .unwrap();
    assert!((star - 2.5).abs() <= 1e-6, "eps* = {star}");
}

#[test]
fn analyze_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ this is not json").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parsing"));
}

#[test]
fn analyze_exits_two_when_nothing_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("strong.json");
    std::fs::write(
        &spec,
        r#"{
  "n": 2, "omega": 1.0,
  "d": [{"c0": 2.0}, {"c0": 11.0}],
  "a": [[{"c0": 1.0}, {"c0": 3.0}], [{"c0": 11.0}, {"c0": 1.0}]],
  "b": [[{"c0": 0.0}, {"c0": 0.0}], [{"c0": 0.0}, {"c0": 0.0}]],
  "inputs": [{"c0": 0.0}, {"c0": 0.0}],
  "tau": [[0.0, 0.0], [0.0, 0.0]],
  "G": [1.0, 1.0], "F": [1.0, 1.0]
}"#,
    )
    .unwrap();
    let out = run(&["analyze", spec.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert!(rep["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["feasible"] == false));
    assert!(rep["simulation"].is_null());
}

#[test]
fn simulate_matches_the_scalar_relaxation() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("relax.json");
    let hist = dir.path().join("zero.json");
    std::fs::write(
        &spec,
        r#"{"n": 1, "omega": 1.0, "d": [{"c0": 1.0}], "a": [[{"c0": 0.0}]],
            "b": [[{"c0": 0.0}]], "inputs": [{"c0": 1.0}], "tau": [[0.0]],
            "G": [1.0], "F": [1.0]}"#,
    )
    .unwrap();
    std::fs::write(&hist, r#"{"kind": "constant", "values": [0.0]}"#).unwrap();
    let prefix = dir.path().join("relax");
    let out = run(&[
        "simulate",
        spec.to_str().unwrap(),
        hist.to_str().unwrap(),
        "--t-end",
        "1",
        "--h",
        "0.01",
        "--out-prefix",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    // u' = 1 - u from rest: u(1) = 1 - exp(-1), and RK4 at h = 0.01 is
    // far inside 1e-9 of it
    let csv = std::fs::read_to_string(dir.path().join("relax.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    let fields: Vec<f64> = last.split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(fields[0], 1.0);
    assert!((fields[1] - (1.0 - (-1.0f64).exp())).abs() <= 1e-9);

    let rep = report(&out);
    assert_eq!(rep["final_state"][0].as_f64().unwrap(), fields[1]);
    // one period is too short for a period-map section
    assert!(rep["period_map"].is_null());
    assert!(dir.path().join("relax.report.json").exists());
}

#[test]
fn simulate_integrates_a_pure_delay_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("delay.json");
    let hist = dir.path().join("one.json");
    std::fs::write(
        &spec,
        r#"{"n": 1, "omega": 1.0, "d": [{"c0": 0.0}], "a": [[{"c0": 0.0}]],
            "b": [[{"c0": -1.0}]], "inputs": [{"c0": 0.0}], "tau": [[1.0]],
            "G": [1.0], "F": [1.0]}"#,
    )
    .unwrap();
    std::fs::write(&hist, r#"{"kind": "constant", "values": [1.0]}"#).unwrap();
    let prefix = dir.path().join("delay");
    let out = run(&[
        "simulate",
        spec.to_str().unwrap(),
        hist.to_str().unwrap(),
        "--t-end",
        "1",
        "--h",
        "0.03125",
        "--out-prefix",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    // u'(t) = -u(t-1) with unit history gives u(t) = 1 - t on [0, 1]
    let rep = report(&out);
    assert!(rep["final_state"][0].as_f64().unwrap().abs() <= 1e-12);
}

#[test]
fn simulate_shipped_example_decays_per_period() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("ex1");
    let out = run(&[
        "simulate",
        data("example1.spec.json").to_str().unwrap(),
        data("example1.hist.json").to_str().unwrap(),
        "--t-end",
        "10",
        "--h",
        "0.01",
        "--out-prefix",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    let diffs: Vec<f64> = rep["period_map"]["diffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!(diffs.len() >= 8);
    for w in diffs.windows(2) {
        assert!(w[1] <= w[0] * (1.0 + 1e-9), "period-map gap grew: {w:?}");
    }
    assert_eq!(rep["period_map"]["saturated"], false);
}

#[test]
fn simulate_rejects_offgrid_steps() {
    let out = run(&[
        "simulate",
        data("example1.spec.json").to_str().unwrap(),
        data("example1.hist.json").to_str().unwrap(),
        "--t-end",
        "1",
        "--h",
        "0.3",
        "--out-prefix",
        "/tmp/never-written",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_accepts_the_recorded_certificate() {
    let out = run(&[
        "verify",
        data("example1.spec.json").to_str().unwrap(),
        data("example1.cert.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep["valid"], true);
    assert_eq!(rep["row_margins"][0].as_f64().unwrap(), -1.0);
    assert_eq!(rep["row_margins"][1].as_f64().unwrap(), -3.0);
}

#[test]
fn verify_rejects_boundary_weights() {
    // theta = (3, 1) sits on the edge of the weight cone: row 1 margin 0
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("edge.json");
    std::fs::write(
        &cert,
        r#"{"kind": "L1", "weights": [3.0, 1.0], "epsilon": 0.0, "slack": 0.0}"#,
    )
    .unwrap();
    let out = run(&[
        "verify",
        data("example1.spec.json").to_str().unwrap(),
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["valid"], false);
}

#[test]
fn transform_round_trips_between_forms() {
    let spec = data("example1.spec.json");
    let out = run(&[
        "transform",
        spec.to_str().unwrap(),
        "--from",
        "l1",
        "--to",
        "lp",
        "--p",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep["alpha_star"].as_array().unwrap().len(), 2);
    assert_eq!(rep["result_weights"].as_array().unwrap().len(), 2);

    // the reverse direction needs a balanced Lp certificate, which this
    // example does not admit
    let back = run(&[
        "transform",
        spec.to_str().unwrap(),
        "--from",
        "lp",
        "--to",
        "l1",
        "--p",
        "2",
    ]);
    assert_eq!(code(&back), 2);

    let sideways = run(&[
        "transform",
        spec.to_str().unwrap(),
        "--from",
        "l1",
        "--to",
        "l1",
    ]);
    assert_eq!(code(&sideways), 1);
}

#[test]
fn repro_example1_reports_all_green() {
    let out = run(&["repro", "example1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep["all_pass"], true);
    assert_eq!(rep["assertions"].as_array().unwrap().len(), 9);
    assert!(rep["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["pass"] == true));
}
