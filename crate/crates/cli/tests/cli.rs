//! End-to-end checks of the binary: exit codes, output shapes and the
//! documented command forms.

use std::process::Command;

fn qwitt(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwitt"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn delta_prints_derived_objects() {
    let (stdout, _, code) = qwitt(&["delta", "--s", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("g = 1 - q*t"));
    assert!(stdout.contains("d = 1"));
    assert!(stdout.contains("delta = 1 + q*t"));
}

#[test]
fn delta_with_specialized_q() {
    let (stdout, _, code) = qwitt(&["delta", "--s", "0", "--q", "2/3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("g = 1 - 3/2*t"));
    assert!(stdout.contains("delta = 0"));
}

#[test]
fn bracket_plain_and_json_agree() {
    let (plain, _, code) = qwitt(&["bracket", "--s", "2", "--n", "0", "--m", "1"]);
    assert_eq!(code, 0);
    assert!(plain.contains("[d_0, d_1] = (t) Delta"));
    let (json, _, code) = qwitt(&[
        "bracket", "--s", "2", "--n", "0", "--m", "1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["coefficient"], serde_json::json!([[1, "1"]]));
}

#[test]
fn reduce_decomposes_input() {
    let (stdout, _, code) = qwitt(&["reduce", "--s", "2", "t"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("alpha_0 = (1)/(q)"));
}

#[test]
fn reduce_reports_parse_errors() {
    let (_, stderr, code) = qwitt(&["reduce", "--s", "2", "t^(1/2)"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("integer exponent required"));
}

#[test]
fn verify_three_way_full_window() {
    let (stdout, _, code) = qwitt(&[
        "verify",
        "--suite",
        "three-way",
        "--s",
        "2",
        "--window",
        "-8..8",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("ok:"));
}

#[test]
fn verify_ssets_s_minus_1_has_one_skip() {
    let (stdout, _, code) = qwitt(&[
        "verify", "--suite", "ssets", "--s", "-1", "--window", "-4..4", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let skipped: Vec<_> = value["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "skipped")
        .collect();
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0]["evidence"]
        .as_str()
        .unwrap()
        .contains("open in paper"));
}

#[test]
fn verify_identity_endomorphism_is_a_usage_error() {
    let (_, stderr, code) = qwitt(&["verify", "--suite", "jacobi", "--s", "1", "--q", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("sigma is identity"));
}

#[test]
fn verify_unknown_suite_is_a_usage_error() {
    let (_, stderr, code) = qwitt(&["verify", "--suite", "nonsense", "--s", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown suite"));
}

#[test]
fn verify_runs_all_suites_by_default() {
    let (stdout, _, code) = qwitt(&["verify", "--s", "2", "--window", "-2..2"]);
    assert_eq!(code, 0);
    for marker in [
        "skew/",
        "jacobi/",
        "three-way/",
        "decomp/",
        "grading/",
        "mod-inner/",
        "ore/",
    ] {
        assert!(stdout.contains(marker), "missing {marker} in:\n{stdout}");
    }
}

#[test]
fn missing_s_is_a_usage_error() {
    let (_, stderr, code) = qwitt(&["delta"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--s is required"));
}

#[test]
fn table_mod_inner_requires_free_part() {
    let (_, stderr, code) = qwitt(&[
        "table",
        "--s",
        "1",
        "--q",
        "2",
        "--range",
        "0..1",
        "--mod-inner",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no free part"));
}

#[test]
fn table_csv_shape() {
    let (stdout, _, code) = qwitt(&[
        "table",
        "--s",
        "2",
        "--range",
        "-1..1",
        "--mod-inner",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "n,m,d0");
    assert_eq!(lines.len(), 1 + 9);
}

#[test]
fn zero_q_is_a_usage_error() {
    let (_, stderr, code) = qwitt(&["delta", "--s", "2", "--q", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("q must be nonzero"));
}
