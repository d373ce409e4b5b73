//! End-to-end checks of the compiled binary: batch exit codes, the DOT
//! flag and JSON output.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tuniv"))
}

fn write_batch(dir: &tempfile::TempDir, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn batch_of_passing_assertions_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_batch(
        &dir,
        "good.tu",
        "# sanity batch\n\
         assert rankv 3 == 4\n\
         assert regular inf({}) == fails\n\
         assert eq inf({}) inf({{}}) == true\n\
         assert dim 2 == 3\n\
         let z = semi({{}}; 0)\n\
         assert classify z == NWF\n\
         assert rankt {inf({}), 1} == w+1\n",
    );
    let out = bin().arg("--batch").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn failing_assertion_exits_one_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_batch(&dir, "bad.tu", "rankv 3\nassert rankv 3 == 5\nrankv 2\n");
    let out = bin().arg("--batch").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":2:"), "missing line number: {err}");
    // execution stops at the failure
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.trim(), "4");
}

#[test]
fn syntax_error_exits_two_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_batch(&dir, "syn.tu", "rankv 3\nsemi({1} 0)\n");
    let out = bin().arg("--batch").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":2:"), "{err}");
    assert!(err.contains("expected"), "{err}");
}

#[test]
fn dot_flag_writes_graphs() {
    let out = bin().arg("--dot").arg("inf({})").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("digraph set {"));
    assert!(text.contains("[style=dashed]"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("graph.dot");
    let out = bin()
        .arg("--dot")
        .arg("semi({1};0)")
        .arg("-o")
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&file).unwrap();
    assert!(written.contains("digraph set {"));
    assert!(written.contains("dashed"));
}

#[test]
fn json_mode_emits_envelopes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_batch(&dir, "j.tu", "rankv 3\n{0, inf({})}\n");
    let out = bin().arg("--json").arg("--batch").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["command"], "rankv 3");
    assert_eq!(first["result"], "4");
    let second: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(second["classification"], "NWF");
    assert_eq!(second["ranks"]["rank_t"], "w+1");
}

#[test]
fn numeral_bound_flag_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_batch(&dir, "n.tu", "rankv 5\n");
    let out = bin()
        .arg("--max-numeral")
        .arg("4")
        .arg("--batch")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));
}

#[test]
fn piped_stdin_reports_worst_error() {
    let mut child = bin()
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"rankv oops\nrankv 3\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "4");
}
