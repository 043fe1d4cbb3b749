//! End-to-end tests of the `orbihall` binary: schemas, exit codes,
//! idempotence and report round-trips.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn orbihall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbihall"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

const PILLOWCASE_BUNDLE: &str = r#"{"genus": 0, "marked_points": [
    {"label": "p1", "m": 2, "d": 0}, {"label": "p2", "m": 2, "d": 0},
    {"label": "p3", "m": 2, "d": 0}, {"label": "p4", "m": 2, "d": 0}],
    "deg_smooth": 4}"#;

#[test]
fn info_reports_cover_topology() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        r#"{"surface": {"genus": 0, "marked_points": [
            {"label": "a", "m": 2}, {"label": "b", "m": 3}, {"label": "c", "m": 7}]},
            "group_order": 168}"#,
    );
    let out = orbihall(&["info", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["chi_orb"]["num"], serde_json::json!(-1));
    assert_eq!(v["chi_orb"]["den"], serde_json::json!(42));
    assert_eq!(v["cover"]["genus"], serde_json::json!(3));
    assert_eq!(v["cover"]["sheet_counts"], serde_json::json!([84, 56, 24]));
}

#[test]
fn spectrum_reports_pillowcase_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        &format!(
            r#"{{"bundle": {PILLOWCASE_BUNDLE}, "group_order": 2,
                "cover_volume": 1.0, "cyclic_quotient_free": true}}"#
        ),
    );
    let out = orbihall(&["spectrum", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["levels"][0]["multiplicity"], serde_json::json!(5));
    assert_eq!(v["levels"][0]["energy_coeff"]["num"], serde_json::json!(8));
    assert_eq!(v["c1_coefficient"]["num"], serde_json::json!(-1));
    assert_eq!(v["c1_coefficient"]["den"], serde_json::json!(2));
    assert_eq!(v["q_max"], serde_json::json!(16));
}

#[test]
fn spectrum_marks_uncertified_levels() {
    let dir = tempfile::tempdir().unwrap();
    // genus-2 cover with the identity group: q_max = 3, then two
    // uncertified levels with no multiplicity claim
    let input = write(
        dir.path(),
        "in.json",
        r#"{"bundle": {"genus": 2, "marked_points": [], "deg_smooth": 10},
            "group_order": 1, "cover_volume": 1.0}"#,
    );
    let out = orbihall(&["spectrum", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["q_max"], serde_json::json!(3));
    assert_eq!(v["levels"][3]["valid"], serde_json::json!(true));
    assert_eq!(v["levels"][4]["valid"], serde_json::json!(false));
    assert!(v["levels"][4]["multiplicity"].is_null());
    assert_eq!(v["levels"].as_array().unwrap().len(), 6);
}

#[test]
fn transport_convention_flag_flips_sign() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        r#"{"group_order": 2, "intersection_matrix": [[0, 1], [-1, 0]],
            "pushforward": [[1, 0], [0, 1]]}"#,
    );
    let theorem = orbihall(&["transport", "--input", &input]);
    assert!(theorem.status.success());
    let vt: serde_json::Value = serde_json::from_slice(&theorem.stdout).unwrap();
    assert_eq!(vt["convention"], serde_json::json!("theorem"));
    assert_eq!(vt["table"][0][1]["value"]["num"], serde_json::json!(-1));
    assert_eq!(vt["table"][0][1]["value"]["den"], serde_json::json!(2));
    assert_eq!(vt["table"][0][1]["unit"], serde_json::json!("e^2/h"));

    let proof = orbihall(&["transport", "--input", &input, "--convention", "proof"]);
    let vp: serde_json::Value = serde_json::from_slice(&proof.stdout).unwrap();
    assert_eq!(vp["table"][0][1]["value"]["num"], serde_json::json!(1));
}

#[test]
fn validate_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", r#"{"N": 24, "flux_quanta": 4}"#);
    let report_path = dir.path().join("report.json");
    let out = orbihall(&[
        "validate",
        "--input",
        &input,
        "--output",
        report_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["clusters"][0]["degeneracy"], serde_json::json!(4));
    assert_eq!(v["clusters"][0]["even"], serde_json::json!(3));
    assert_eq!(v["clusters"][0]["odd"], serde_json::json!(1));

    let csv_input = write(
        dir.path(),
        "csv.json",
        r#"{"N": 24, "flux_quanta": 4, "emit": "eigenvalues-csv"}"#,
    );
    let out = orbihall(&["validate", "--input", &csv_input]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 12);
    for line in text.lines() {
        line.parse::<f64>().expect("each line is one eigenvalue");
    }
}

#[test]
fn pullback_demo_collapses_classes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        r#"{"point": {"one": {"num": 1, "den": 3}, "tau": {"num": 2, "den": 5}}, "n": 3}"#,
    );
    let out = orbihall(&["pullback-demo", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_equal"], serde_json::json!(true));
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_json_exits_one_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.json", "{ not json");
    let out = orbihall(&["info", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], serde_json::json!("parse_error"));
    assert!(diag["detail"].as_str().unwrap().len() > 4);
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_keys_are_rejected_not_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        r#"{"N": 24, "flux_quanta": 4, "bogus": 1}"#,
    );
    let out = orbihall(&["validate", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hypothesis_violation_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    // trivial bundle on a hyperbolic orbifold: deg_orb = 0 <= -chi_orb
    let input = write(
        dir.path(),
        "in.json",
        r#"{"bundle": {"genus": 0, "marked_points": [
            {"label": "a", "m": 2, "d": 0}, {"label": "b", "m": 3, "d": 0},
            {"label": "c", "m": 7, "d": 0}], "deg_smooth": 0},
            "group_order": 84, "cover_volume": 1.0}"#,
    );
    let out = orbihall(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(3));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], serde_json::json!("hypothesis_violated"));
}

#[test]
fn numerical_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    // odd flux is a plain input error (exit 1)...
    let odd = write(dir.path(), "odd.json", r#"{"N": 24, "flux_quanta": 5}"#);
    let out = orbihall(&["validate", "--input", &odd]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn misplaced_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        r#"{"surface": {"genus": 1, "marked_points": []}}"#,
    );
    let out = orbihall(&["info", "--input", &input, "--convention", "proof"]);
    assert_eq!(out.status.code(), Some(1));
    let out = orbihall(&["info", "--input", &input, "--cap", "3"]);
    assert_eq!(out.status.code(), Some(1));
    // --seed is accepted everywhere but warns
    let out = orbihall(&["info", "--input", &input, "--seed", "7"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("deterministic"));
}

#[test]
fn identical_jobs_produce_byte_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", r#"{"N": 24, "flux_quanta": 4}"#);
    let a = orbihall(&["validate", "--input", &input]);
    let b = orbihall(&["validate", "--input", &input]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
}

#[test]
fn reports_reparse_under_their_schema() {
    // round trip: emitted bundle/surface JSON feeds back in unchanged
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "in.json",
        &format!(r#"{{"bundle": {PILLOWCASE_BUNDLE}, "q": 1}}"#),
    );
    let out = orbihall(&["riemann-roch", "--input", &input]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["euler_characteristic"], serde_json::json!(5));
    assert_eq!(v["twist"]["deg_smooth"], serde_json::json!(2));
    assert_eq!(v["twist"]["euler_characteristic"], serde_json::json!(3));
}
