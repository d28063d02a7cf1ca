//! End-to-end tests of the `cvqfi` binary: argument surface, exit codes,
//! and output stability, via real process invocations.

use std::path::Path;
use std::process::{Command, Output};

fn cvqfi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvqfi"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_file(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const PLAIN_TWO_MODE: &str = r#"{"n_modes": 2, "input_squeezing": [0.5, 0.5], "elements": []}"#;

#[test]
fn qfi_reports_json_for_a_network_file() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    write_file(&net, PLAIN_TWO_MODE);

    let out = cvqfi(&[
        "qfi",
        "--network",
        net.to_str().unwrap(),
        "--g",
        "1,-1",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report = stdout_json(&out);
    let qfi = report["qfi"].as_f64().unwrap();
    let expect = 4.0 * 1.0f64.sinh().powi(2);
    assert!((qfi - expect).abs() <= 1e-9 * expect);
    assert_eq!(report["pure"], true);
}

#[test]
fn qfi_defaults_to_text_output() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    write_file(&net, PLAIN_TWO_MODE);

    let out = cvqfi(&["qfi", "--network", net.to_str().unwrap(), "--g", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("qfi: 0\n"), "{text:?}");
}

#[test]
fn qfi_usage_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    write_file(&net, PLAIN_TWO_MODE);

    // Weight count mismatch.
    let out = cvqfi(&["qfi", "--network", net.to_str().unwrap(), "--g", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // Unknown element kind.
    let bad = dir.path().join("bad.json");
    write_file(
        &bad,
        r#"{"n_modes": 1, "input_squeezing": [0.1],
            "elements": [{"kind": "amplifier", "gain": 2.0}]}"#,
    );
    let out = cvqfi(&["qfi", "--network", bad.to_str().unwrap(), "--g", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing file.
    let out = cvqfi(&["qfi", "--network", "/no/such/file.json", "--g", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out_path in [&a, &b] {
        let out = cvqfi(&[
            "scan",
            "--r",
            "0.5",
            "--points",
            "65",
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{out:?}");
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);

    let text = String::from_utf8(bytes_a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,entropy,qfi_single,qfi_common,qfi_differential"
    );
    assert_eq!(lines.count(), 65);
    assert!(text.ends_with('\n'));
    assert!(!text.contains('\r'));
}

#[test]
fn scan_rejects_single_point_grids() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("scan.csv");
    let out = cvqfi(&[
        "scan",
        "--r",
        "0.5",
        "--points",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn optimize_closes_the_gap_on_the_balanced_case() {
    let out = cvqfi(&[
        "optimize",
        "--r",
        "0.5,0.5",
        "--g",
        "1,-1",
        "--restarts",
        "8",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report = stdout_json(&out);
    let theoretical = report["theoretical_max"].as_f64().unwrap();
    assert!(report["gap"].as_f64().unwrap() <= 1e-6 * theoretical);
}

#[test]
fn optimize_rejects_empty_inputs() {
    let out = cvqfi(&["optimize", "--r", "", "--g", ""]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_fails_by_exit_code() {
    let out = cvqfi(&["verify", "--seed", "5", "--trials", "10", "--max-modes", "2"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report = stdout_json(&out);
    assert_eq!(report["all_passed"], true);

    let out = cvqfi(&["verify", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_usage_errors_follow_the_exit_policy() {
    for sub in ["qfi", "scan", "optimize", "verify"] {
        let out = cvqfi(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "help for {sub}");
    }
    let out = cvqfi(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cvqfi(&[]);
    assert_eq!(out.status.code(), Some(2));
}
