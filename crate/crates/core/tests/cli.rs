//! The `reebc` binary end to end.

use std::process::Command;

fn reebc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reebc"))
}

#[test]
fn writes_and_validates_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let svg = dir.path().join("svg");
    let dot = dir.path().join("graphs.dot");
    let status = reebc()
        .args(["--builtin", "eq2", "--resolution", "16", "--oracle-check", "24"])
        .arg("--output")
        .arg(&json)
        .arg("--svg")
        .arg(&svg)
        .arg("--dot")
        .arg(&dot)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read_dir(&svg).unwrap().count(), 3);
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(dot_text.matches("graph ").count(), 2);

    let out = reebc().arg("validate").arg(&json).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("3 rectangles, 6 cells"));
}

#[test]
fn prints_labels_without_output() {
    let out = reebc().args(["--builtin", "diamond-pair", "--resolution", "12"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1 rectangles, 2 cells"), "{text}");
    assert!(text.contains("FIRST_INSIDE_SECOND") && text.contains("SECOND_INSIDE_FIRST"));
}

#[test]
fn simplification_flags() {
    let out = reebc()
        .args(["--builtin", "eq2", "--resolution", "12", "--simplify", "2", "--mode", "ignore", "--side", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("arcs 1 x 1, 1 rectangles"));
}

#[test]
fn runs_a_mesh_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/two_bowls.rcm");
    let out = reebc().args(["--mesh", path]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("6 cells"));
}

#[test]
fn failures_have_exit_codes() {
    let missing = reebc().args(["--mesh", "/nonexistent/mesh.rcm"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());

    let neither = reebc().output().unwrap();
    assert_eq!(neither.status.code(), Some(2));

    let bad = reebc().args(["--builtin", "eq1", "--simplify", "abc"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("broken.json");
    std::fs::write(&json, "{\"format\": \"other\"}").unwrap();
    let invalid = reebc().arg("validate").arg(&json).output().unwrap();
    assert_eq!(invalid.status.code(), Some(1));
}
