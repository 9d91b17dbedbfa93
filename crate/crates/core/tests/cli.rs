use std::fs;
use std::path::PathBuf;

use isbrauer::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("isbrauer").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

struct TempFile(PathBuf);

impl TempFile {
    fn new(name: &str, text: &str) -> Self {
        let path = std::env::temp_dir().join(format!("isbrauer-{}-{name}", std::process::id()));
        fs::write(&path, text).unwrap();
        TempFile(path)
    }

    fn arg(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

#[test]
fn compute_hpt_file() {
    let (_, src, _) = call(&["example", "hpt", "--emit"]);
    let f = TempFile::new("hpt.isb", &src);
    let (code, out, err) = call(&["compute", f.arg()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("h2nr_dim: 1"));
    assert!(out.contains("generator 1: (0,1,0,1,0,1)"));
}

#[test]
fn json_matches_text_dims() {
    let (code, json, _) = call(&["example", "cubic-quartic", "--json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let (_, text, _) = call(&["example", "cubic-quartic"]);
    let d = &value["dims"];
    let line = format!(
        "dims: s={} p={} q={} r={} kernel={} h2nr={}",
        d["s"], d["p"], d["q"], d["r"], d["kernel"], d["h2nr"]
    );
    assert!(text.contains(&line), "{text}");
    assert!(json.starts_with(r#"{"dims":{"s":0,"p":2,"q":1,"r":0,"kernel":1,"h2nr":1}"#));
}

#[test]
fn output_is_deterministic() {
    assert_eq!(
        call(&["example", "hpt", "--json"]),
        call(&["example", "hpt", "--json"])
    );
    assert_eq!(call(&["toric", "demo"]), call(&["toric", "demo"]));
}

#[test]
fn validate_reports_forbidden_pair() {
    let (_, src, _) = call(&["example", "hpt", "--emit"]);
    let f = TempFile::new(
        "pair.isb",
        &format!("{src}\npoint bad:\n  curves: C', D'_x\n  etype: I_II\n"),
    );
    let (code, out, _) = call(&["validate", f.arg()]);
    assert_eq!(code, 1);
    assert!(out.contains("forbidden-pair"), "{out}");
    let (code, _, err) = call(&["compute", f.arg()]);
    assert_eq!(code, 1);
    assert!(err.contains("forbidden-pair"));
}

#[test]
fn parse_errors_exit_two_with_positions() {
    let f = TempFile::new("bad.isb", "cover: irreducible\nsymbols: a\ncurve c\n");
    let (code, out, err) = call(&["validate", f.arg()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains(":3:1: syntax error"), "{err}");
}

#[test]
fn explain_lists_kernels() {
    let (_, src, _) = call(&["example", "hpt", "--emit"]);
    let f = TempFile::new("explain.isb", &src);
    let (code, out, _) = call(&["explain", f.arg()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("restriction kernel S (dim 0): trivial"));
    assert!(out.contains("curve x_axis (II, split)"));
    assert!(out.contains("curve C' (I, ramified): kernel trivial (Type I); generators: none"));
    assert!(out.contains("odd-order coefficients"));
}

#[test]
fn toric_demo_ends_smooth() {
    let (code, out, _) = call(&["toric", "demo"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim_end().lines().last(), Some("smooth: true"));
}

#[test]
fn toric_check_file() {
    let f = TempFile::new(
        "fan.txt",
        "ray 1 0 0 0\nray 0 1 0 0\nray 1 0 1 0\nray 0 1 1 0\nray 1 0 0 1\nray 0 1 0 1\ncone 0 1 2 3 4 5\nsubdivide 1 1 1 0\n",
    );
    let (code, out, _) = call(&["toric", "check", f.arg()]);
    assert_eq!(code, 0);
    assert!(out.ends_with("smooth: false\n"), "{out}");

    let bad = TempFile::new("badfan.txt", "ray 1 0 0 0\ncone 0 9\n");
    let (code, _, err) = call(&["toric", "check", bad.arg()]);
    assert_eq!(code, 2);
    assert!(err.contains(":2:8:"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["frobnicate"]).0, 3);
    assert_eq!(call(&["validate", "/definitely/not/here.isb"]).0, 3);
    assert_eq!(call(&["example", "hpt", "--emit", "--json"]).0, 3);
}
