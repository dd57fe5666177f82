use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pathlike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathlike")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const H_LETTER: &str = "6\n1 2\n2 3\n3 4\n2 5\n3 6\n";

#[test]
fn decide_h_letter_with_explanation() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "h_letter.tree", H_LETTER);
    let out = pathlike(&["decide", &tree, "--explain"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("yes\n"));
    assert!(text.lines().any(|l| l == "kind=bridge"));
}

#[test]
fn star_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "star4.tree", "4\n1 2\n1 3\n1 4\n");
    let out = pathlike(&["decide", &tree]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no\n");
}

#[test]
fn enumerate_counts() {
    let out = pathlike(&["enumerate", "--order", "4", "--count-only"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");
    let listed = stdout(&pathlike(&["enumerate", "--order", "7"]));
    assert_eq!(listed.split("\n\n").count(), 5);
}

#[test]
fn witness_feeds_render_and_embed() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "h.tree", H_LETTER);
    let w = dir.path().join("w.lc");
    let out = pathlike(&["decide", &tree, "--witness", w.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let witness = fs::read_to_string(&w).unwrap();
    assert!(witness.starts_with("paths "));
    let embed = stdout(&pathlike(&["embed", w.to_str().unwrap()]));
    assert_eq!(embed.lines().count(), 6);
    assert!(embed.starts_with("1 0 0\n"));
    let from_tree = stdout(&pathlike(&["embed", &tree]));
    assert_eq!(embed, from_tree);
    let drawing = stdout(&pathlike(&["render", w.to_str().unwrap()]));
    assert!(drawing.contains('*') && drawing.contains('|'));
    assert_eq!(drawing, stdout(&pathlike(&["embed", w.to_str().unwrap(), "--ascii"])));
}

#[test]
fn classify_lists_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "h.tree", H_LETTER);
    let text = stdout(&pathlike(&["classify", &tree]));
    assert_eq!(text, "type-h\nparams=(3,3;1;2,2)\n");
}

#[test]
fn oracle_check_small_orders() {
    let out = pathlike(&["oracle-check", "--max-order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("0 discrepancies\n"));
    let out = pathlike(&["oracle-check", "--max-order", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("0 discrepancies\n"));
}

#[test]
fn golden_mismatch_is_a_verification_failure() {
    let dir = tempfile::tempdir().unwrap();
    let golden = write(dir.path(), "g.txt", "5 3\n");
    let out = pathlike(&["oracle-check", "--max-order", "5", "--golden", &golden]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("kind=Golden"));
    let committed = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/golden_counts.txt");
    let out = pathlike(&["oracle-check", "--max-order", "8", "--golden", committed]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["decide"],
        vec!["decide", "/nonexistent/file.tree"],
        vec!["oracle-check", "--max-order", "3"],
        vec!["enumerate", "--order", "x"],
    ] {
        let out = pathlike(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.tree", "3\n1 2\n");
    assert_eq!(pathlike(&["decide", &bad]).status.code(), Some(2));
}

#[test]
fn oracle_flag_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(dir.path(), "h.tree", H_LETTER);
    let out = pathlike(&["decide", &tree, "--oracle", "--explain"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("route=oracle"));
    let mut child = Command::new(env!("CARGO_BIN_EXE_pathlike"))
        .args(["decide", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(H_LETTER.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "yes\n");
}

#[test]
fn output_is_deterministic() {
    let a = pathlike(&["enumerate", "--order", "9"]);
    let b = pathlike(&["enumerate", "--order", "9"]);
    assert_eq!(a.stdout, b.stdout);
}
