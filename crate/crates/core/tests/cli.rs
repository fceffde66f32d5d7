//! End-to-end runs of the binary: determinism, exit codes, formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ramtower"))
}

fn run_ok(args: &[&str]) -> Output {
    let output = bin().args(args).output().expect("binary runs");
    assert!(
        output.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

#[test]
fn run_is_byte_deterministic() {
    let path = fixture("example_f3_tame.json");
    let path = path.to_str().unwrap();
    let first = run_ok(&["run", path]);
    let second = run_ok(&["run", path]);
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn run_reports_paper_numbers() {
    let path = fixture("example_3_2.json");
    let out = run_ok(&["run", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("e1=2 e2=2"));
    assert!(text.contains("divisible=true"));
    assert!(text.contains("direct=ramified"));
    assert!(text.contains("value_group=1/2 [1 0; 0 2]"));
}

#[test]
fn structured_output_is_json_with_mirrored_keys() {
    let path = fixture("example_f3_tame.json");
    let out = run_ok(&["run", path.to_str().unwrap(), "--format", "structured"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let results = value["results"].as_array().unwrap();
    let ab = results
        .iter()
        .find(|r| r["check"] == "abhyankar")
        .expect("abhyankar result present");
    assert_eq!(ab["lhs"], 8);
    assert_eq!(ab["rhs"], 8);
    assert_eq!(ab["condition"], true);
    assert_eq!(value["warnings"], 0);
}

#[test]
fn self_check_agrees_on_fixtures() {
    for name in [
        "example_3_2.json",
        "example_f3_tame.json",
        "example_p3mod4.json",
    ] {
        let path = fixture(name);
        run_ok(&["run", path.to_str().unwrap(), "--self-check"]);
    }
}

#[test]
fn missing_file_and_bad_json_exit_1() {
    let out = bin()
        .args(["run", "/nonexistent/scenario.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("ramtower-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = bin().args(["run", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("line"),
        "parse errors carry positions, got: {stderr}"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn value_subcommand_prints_exact_vectors() {
    let out = run_ok(&["value", "Q:X,Y", "(X^2*Y + X^3)/Y"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "value=(2, 0)\n");

    let out = run_ok(&["value", "Q:X,Y", "X + Y"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "value=(0, 1)\n");

    let out = run_ok(&["value", "GF(5):t", "2/t^3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "value=(-3)\n");

    let out = bin().args(["value", "GF(4):t", "t"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_subcommand_reports_clean_summary() {
    let out = run_ok(&["sweep", "--residue-chars", "3", "--max-order-other", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("sweep: total="));
    assert!(text.contains("disagreements=0"));

    let out = bin()
        .args(["sweep", "--residue-chars", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
