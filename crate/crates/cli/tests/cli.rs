use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_superquad"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const H3: &str = "basis e1:even e2:even e3:even\nbracket [e1,e2] = e3\n";

#[test]
fn cohomology_text_report() {
    let (code, out, _) = run(&["--text", "cohomology", "-"], H3);
    assert_eq!(code, 0);
    assert!(out.contains("dim_h3 = 1"));
    assert!(out.starts_with("status: pass"));
}

#[test]
fn parse_error_is_input_error() {
    let (code, out, err) = run(&["check", "-"], "basis e1:even\nbracket [e1,e9] = e1\n");
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 2"));
}

#[test]
fn max_dim_is_enforced() {
    let (code, _, err) = run(&["--max-dim", "2", "check", "-"], H3);
    assert_eq!(code, 2);
    assert!(err.contains("max-dim"));
}

#[test]
fn large_gallery_needs_flag() {
    assert_eq!(run(&["example", "gn", "5"], "").0, 2);
    let (code, out, _) = run(&["--allow-large", "example", "gn", "5"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("basis "));
}

#[test]
fn non_supercyclic_cochain_is_a_failed_check() {
    let doc = format!("{H3}cochain2 w(e1,e3;e1) = 1\n");
    let (code, out, _) = run(&["tstar", "-", "--omega", "w"], &doc);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let check = |name: &str| {
        report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .unwrap()["pass"]
            .clone()
    };
    assert_eq!(code, 1);
    assert_eq!(report["status"], "fail");
    assert_eq!(check("cocycle"), true);
    assert_eq!(check("supercyclic"), false);
    assert_eq!(check("extension_form_invariant"), false);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn seeded_random_omega_is_reproducible() {
    let a = run(&["--seed", "5", "tstar", "-", "--omega", "random"], H3);
    let b = run(&["--seed", "5", "tstar", "-", "--omega", "random"], H3);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn recognize_accepts_combinations() {
    let (_, doc, _) = run(&["example", "stock", "tstar-h3"], "");
    let (code, out, _) = run(&["recognize", "-", "--ideal", "e1*, e2*, e3* + e3*"], &doc);
    assert_eq!(code, 0, "{out}");
}
