//! End-to-end tests against the compiled binary: pinned table values,
//! exit codes, format contracts, and byte-level determinism.

use std::process::{Command, Output};

fn qeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn euler_csv_table_is_exact() {
    let out = qeg(&[
        "euler", "--n", "0..4", "--r", "1", "--q", "1/2", "--w", "1", "--format", "csv",
        "--no-timing",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6, "header plus five rows");
    assert_eq!(lines[0], "n,r,q,w,value");
    assert_eq!(lines[2], "1,1,1/2,1,-1/2");
}

#[test]
fn genocchi_below_order_prints_zero_rows() {
    let out = qeg(&[
        "genocchi", "--m", "0..3", "--r", "2", "--q", "1/2", "--w", "1/2", "--format", "csv",
        "--no-timing",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "0,2,1/2,1/2,0");
    assert_eq!(lines[2], "1,2,1/2,1/2,0");
}

#[test]
fn q_equal_one_fails_with_classical_hint() {
    let out = qeg(&["euler", "--n", "2", "--q", "1", "--w", "1", "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("table --classical"), "hint missing: {err}");
}

#[test]
fn zeta_at_zero_hits_the_geometric_value() {
    let out = qeg(&[
        "zeta", "--s", "0", "--q", "1/2", "--w", "1/4", "--r", "1", "--format", "json",
        "--no-timing",
    ]);
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let record = &records.as_array().unwrap()[0];
    let re = record["value"]["re"].as_f64().unwrap();
    let im = record["value"]["im"].as_f64().unwrap();
    assert!((re - (-0.3)).abs() < 1e-10, "got {re}");
    assert_eq!(im, 0.0);
    assert_eq!(record["method"], "direct");
    assert!(record["error_estimate"].is_string());
}

#[test]
fn zeta_at_negative_integers_matches_the_euler_number() {
    let zeta = qeg(&[
        "zeta", "--s", "-3", "--q", "1/2", "--w", "1/2", "--r", "1", "--format", "json",
        "--no-timing",
    ]);
    assert!(zeta.status.success());
    let records: serde_json::Value = serde_json::from_str(&stdout(&zeta)).unwrap();
    let re = records[0]["value"]["re"].as_f64().unwrap();
    // E_3 at q = w = 1/2 is -8/85.
    assert!((re - (-8.0 / 85.0)).abs() < 1e-10, "got {re}");
}

#[test]
fn zeta_direct_outside_its_region_is_a_usage_error() {
    let out = qeg(&[
        "zeta", "--s", "2+1i", "--q", "1/2", "--w", "0.99", "--method", "direct", "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("accelerated"));
}

#[test]
fn witt_check_passes_on_a_convergent_family() {
    let out = qeg(&[
        "witt", "--p", "3", "--q", "4", "--w", "1", "--r", "1", "--n", "1", "--levels", "4",
        "--check", "--no-timing",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
}

#[test]
fn witt_rejects_a_composite_modulus() {
    let out = qeg(&["witt", "--p", "4", "--q", "5", "--no-timing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("odd prime"));
}

#[test]
fn witt_rejects_a_congruence_violation() {
    let out = qeg(&["witt", "--p", "3", "--q", "2", "--no-timing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("congruence"));
}

#[test]
fn classical_genocchi_table_starts_with_the_known_sequence() {
    let out = qeg(&[
        "table", "--classical", "--family", "genocchi", "--order", "6", "--format", "csv",
        "--no-timing",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let values: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|line| line.split_once(',').unwrap().1)
        .collect();
    assert_eq!(values, ["0", "1", "-1", "0", "1", "0", "-3"]);
}

#[test]
fn poly_at_zero_agrees_with_the_number_table() {
    let poly = qeg(&[
        "poly", "--family", "euler", "--n", "0..6", "--x", "0", "--q", "2/5", "--w", "1/3",
        "--format", "csv", "--no-timing",
    ]);
    let numbers = qeg(&[
        "euler", "--n", "0..6", "--q", "2/5", "--w", "1/3", "--format", "csv", "--no-timing",
    ]);
    assert!(poly.status.success() && numbers.status.success());
    let poly_values: Vec<String> = stdout(&poly)
        .lines()
        .skip(1)
        .map(|line| line.rsplit_once(',').unwrap().1.to_string())
        .collect();
    let number_values: Vec<String> = stdout(&numbers)
        .lines()
        .skip(1)
        .map(|line| line.rsplit_once(',').unwrap().1.to_string())
        .collect();
    assert_eq!(poly_values, number_values);
}

#[test]
fn verify_all_passes() {
    let out = qeg(&["verify", "--all", "--format", "csv", "--no-timing"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        assert!(line.contains(",pass,"), "failing identity: {line}");
    }
}

#[test]
fn verify_reports_the_comparator_witness_index() {
    let out = qeg(&["verify", "--identity", "comparator", "--no-timing"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("first divergence at n = 1"));
}

#[test]
fn verify_without_a_selection_is_a_usage_error() {
    let out = qeg(&["verify", "--no-timing"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_configs_produce_identical_bytes() {
    let args = [
        "euler", "--n", "0..8", "--r", "2", "--q", "3/7", "--w", "2/9", "--format", "csv",
        "--no-timing",
    ];
    let first = qeg(&args);
    let second = qeg(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_output_round_trips_exact_values() {
    let out = qeg(&[
        "euler", "--n", "0..4", "--q", "1/2", "--w", "1", "--format", "json", "--no-timing",
    ]);
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = records.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1]["n"], 1);
    assert_eq!(rows[1]["value"], "-1/2");
    assert_eq!(rows[1]["q"], "1/2");
}

#[test]
fn out_flag_writes_the_data_file() {
    let dir = std::env::temp_dir().join("qeg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("euler.csv");
    let out = qeg(&[
        "euler", "--n", "0..2", "--q", "1/2", "--w", "1", "--format", "csv", "--no-timing",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty(), "data must go to the file only");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,r,q,w,value\n"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn timing_footer_is_on_stderr_and_suppressible() {
    let with_timing = qeg(&["euler", "--n", "0", "--q", "1/2", "--w", "1"]);
    assert!(stderr(&with_timing).contains("elapsed:"));
    assert!(!stdout(&with_timing).contains("elapsed:"));
    let without = qeg(&["euler", "--n", "0", "--q", "1/2", "--w", "1", "--no-timing"]);
    assert!(!stderr(&without).contains("elapsed:"));
}
