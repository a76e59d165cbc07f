use std::io::Write;
use std::process::{Command, Output};

use graphknot::parse;

fn graphknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_trefoil() {
    let o = graphknot(&["verify", "T(2,3)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("bs (generated):  {0, 6}"));
    assert!(s.contains("membership:"));
    assert!(!s.contains("MISSING"));
}

#[test]
fn oracle_check_passes() {
    let o = graphknot(&["oracle-check", "T(3,5)", "--max-color", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all degrees match"));
}

#[test]
fn invalid_cable_is_input_error() {
    let o = graphknot(&["verify", "C(3,1; T(2,3))"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("q > 1 required"));
}

#[test]
fn syntax_error_exit_code() {
    let o = graphknot(&["analyze", "T(2,3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn batch_is_reproducible() {
    let args = ["batch", "--seed", "17", "--count", "60", "--json"];
    let (a, b) = (graphknot(&args), graphknot(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 60);
    assert_eq!(v["summary"]["errors"], 0);
}

#[test]
fn json_expression_round_trips() {
    let o = graphknot(&["analyze", "--json", "C(13,2; T(2,3)) # mirror(T(2,5))"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = v["expression"].as_str().unwrap();
    assert_eq!(parse(text).unwrap().to_string(), text);
    assert_eq!(v["verdict"]["status"], "VerifiedSupersetLevel");
}

#[test]
fn file_input_skips_comments() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# torus knots\nT(2,3)\n\nT(-3,4) # T(2,5)\n# C(3,1; T(2,3))").unwrap();
    let o = graphknot(&["verify", "--json", "--file", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn explain_shows_homology() {
    let o = graphknot(&["explain", "C(13,2; T(2,3))"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("cabling annulus: slope 26"));
    assert!(s.contains("slope 24"));
}
