//! End-to-end CLI tests against the built binary.

use std::process::{Command, Output};

fn nlqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlqed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn report_json_has_the_headline_number() {
    let out = nlqed(&["report", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let renormalized = doc["z_ratios"]["renormalized_alpha_inv"].as_f64().unwrap();
    assert!((renormalized - 137.0345).abs() < 5e-4);
    assert_eq!(doc["coupling_bare_inv"].as_f64().unwrap(), 136.0);
    assert_eq!(doc["config_echo"]["alpha_inv_predictions"].as_f64().unwrap(), 137.0359);
    assert!(doc["gauge_scan"]["unique_root_at_zero"].as_bool().unwrap());
}

#[test]
fn report_runs_are_byte_identical() {
    let a = nlqed(&["report", "--format", "json"]);
    let b = nlqed(&["report", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_honors_alpha_override() {
    let out = nlqed(&["report", "--format", "json", "--alpha-inv", "137.0359"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["coupling_bare_inv"].as_f64().unwrap(), 137.0359);
}

#[test]
fn report_accepts_degenerate_gauge_grid() {
    let out = nlqed(&["report", "--gauge-points", "2", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["gauge_scan"]["points"].as_u64().unwrap(), 2);
}

#[test]
fn gauge_csv_shape() {
    let out = nlqed(&["gauge", "--min", "0.5", "--max", "1.5", "--points", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,g_value,residual");
    assert_eq!(lines.len(), 5);
    assert!(text.ends_with('\n'));
    for row in &lines[1..] {
        let fields: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(fields.len(), 3);
        assert!(fields[2] < 0.0, "residual must be negative");
    }
}

#[test]
fn csv_is_gauge_only() {
    let out = nlqed(&["report", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("csv"));
}

#[test]
fn zratio_json() {
    let out = nlqed(&["zratio", "--mass", "0.0005", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let z1 = doc["z1_over_z2"].as_f64().unwrap();
    assert!((z1 - 0.996_489_229_196_502_3).abs() < 1e-9);
    assert!(doc["j1"]["converged"].as_bool().unwrap());
}

#[test]
fn moment_tau_prediction() {
    let out = nlqed(&["moment", "--mass", "1.78", "--regime", "large", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let large = doc["large_m"].as_f64().unwrap();
    assert!((large - 0.001_151_584).abs() < 2e-9);
}

#[test]
fn leptons_table_has_three_rows() {
    let out = nlqed(&["leptons", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["name"], "electron");
    assert_eq!(rows[2]["name"], "tau");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nlqed(&["moment", "--mass", "-1"]).status.code(), Some(2));
    assert_eq!(nlqed(&["moment", "--mass", "0"]).status.code(), Some(2));
    assert_eq!(nlqed(&["zratio", "--mass", "nope"]).status.code(), Some(2));
    assert_eq!(nlqed(&["gauge", "--min", "2", "--max", "1"]).status.code(), Some(2));
    assert_eq!(nlqed(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(nlqed(&["report", "--rel-tol", "-1e-9"]).status.code(), Some(2));
    assert_eq!(nlqed(&["report", "--alpha-inv", "0"]).status.code(), Some(2));
}

#[test]
fn out_write_failure_exits_2() {
    let out = nlqed(&["report", "--format", "json", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn out_writes_the_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join("nlqed-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gauge.csv");
    let piped = nlqed(&["gauge", "--points", "3", "--format", "csv"]);
    let filed = nlqed(&["gauge", "--points", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(piped.status.success() && filed.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_exit_code_matches_per_check_lines() {
    // The exit-code contract: 0 iff every printed check passes.
    let out = nlqed(&["verify"]);
    let text = stdout(&out);
    let fails = text.lines().filter(|l| l.starts_with("FAIL")).count();
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    assert_eq!(passes + fails, 23, "expected 23 check lines:\n{text}");
    let expected_code = if fails == 0 { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected_code), "output:\n{text}");
}

#[test]
fn verify_json_lists_all_checks() {
    let out = nlqed(&["verify", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = doc.as_array().unwrap();
    assert_eq!(checks.len(), 23);
    assert!(checks.iter().all(|c| c["id"].is_string() && c["passed"].is_boolean()));
}
