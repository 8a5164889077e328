//! End-to-end checks of the installed binary: exit-code contract, JSON
//! output shape, and table-file ingestion.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chern-counts"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn count_p2_quartic_nodal() {
    let (code, stdout, _) = run(&["count", "--sing", "A1", "--target", "pm(m=2,d=4)"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("27"), "stdout: {stdout}");
}

#[test]
fn count_symbolic_json() {
    let (code, stdout, _) = run(&[
        "count",
        "--sing",
        "A2",
        "--target",
        "pm(m=2,d=d)",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid json");
    let terms = v["value"]["terms"].as_array().expect("terms array");
    assert_eq!(terms.len(), 3);
    // coefficients are decimal strings
    let coeffs: Vec<&str> = terms.iter().map(|t| t["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["12", "-36", "24"]);
}

#[test]
fn bad_target_spec_is_input_error() {
    let (code, _, stderr) = run(&["count", "--sing", "A1", "--target", "pm(m=2)"]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn route_on_a1_is_input_error() {
    let (code, _, _) = run(&[
        "count",
        "--sing",
        "A1",
        "--target",
        "pm(m=2,d=4)",
        "--route",
        "det",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn missing_table_file_is_input_error() {
    let (code, _, _) = run(&[
        "count",
        "--sing",
        "A1",
        "--target",
        "table(file=/no/such/file.json)",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn corrupted_table_file_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let spec = format!("table(file={})", path.display());
    let (code, _, stderr) = run(&["count", "--sing", "A1", "--target", &spec]);
    assert_eq!(code, 2, "stderr: {stderr}");
}

#[test]
fn table_file_happy_path() {
    // chern numbers of P^2 with d = 3 (the cubic linear system)
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2_cubic.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "entries": {"c1^2": 9, "c1*x1": -9, "x1^2": 9, "x2": 3}}"#,
    )
    .unwrap();
    let spec = format!("table(file={})", path.display());
    let (code, stdout, _) = run(&["count", "--sing", "A1", "--target", &spec]);
    assert_eq!(code, 0);
    // 3(d-1)^2 at d = 3
    assert!(stdout.contains("12"), "stdout: {stdout}");
}

#[test]
fn table_file_wrong_weight_entry_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("off.json");
    std::fs::write(&path, r#"{"dimension": 2, "entries": {"c1": 9}}"#).unwrap();
    let spec = format!("table(file={})", path.display());
    let (code, _, _) = run(&["count", "--sing", "A1", "--target", &spec]);
    assert_eq!(code, 2);
}

#[test]
fn formula_text_output() {
    let (code, stdout, _) = run(&["formula", "--sing", "A1", "--dim", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "3*c1^2 + 2*c1*x1 + x2");
}

#[test]
fn formula_bad_dim_is_input_error() {
    let (code, _, _) = run(&["formula", "--sing", "A1", "--dim", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_passes() {
    let (code, stdout, _) = run(&["verify", "--max-dim", "4"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("discrepanc"), "stdout: {stdout}");
}

#[test]
fn table_range_csv() {
    let (code, stdout, _) = run(&[
        "table",
        "--sing",
        "A1",
        "--target",
        "pm(m=2,d=1..5)",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let values: Vec<&str> = stdout
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(values, ["0", "3", "12", "27", "48"]);
}
