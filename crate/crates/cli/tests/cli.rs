use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_momentfrac");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }

    fn error(&self) -> String {
        let v: Value = serde_json::from_str(&self.stderr).unwrap();
        v["error"].as_str().unwrap().to_string()
    }
}

fn run(args: &[&str], input: &str) -> Run {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

const DELTA: &str = r#"{"dim":2,"atoms":[{"point":["1","2"],"mass":"1"}]}"#;

fn delta_tensor() -> String {
    run(&["moments-from-atoms", "--ell", "1"], DELTA).stdout
}

#[test]
fn normal_indices_of_a_sequence() {
    let r = run(&["normal-indices"], r#"{"moments":["1","0","1","0"]}"#);
    assert_eq!(r.code, 0);
    assert_eq!(r.json(), json!({"indices": [1, 2]}));
}

#[test]
fn normal_indices_per_branch() {
    let r = run(&["normal-indices"], &delta_tensor());
    assert_eq!(
        r.json(),
        json!({"branches": [{"index": [0], "indices": [1]}, {"index": [1], "indices": [1]}]})
    );
}

#[test]
fn solve_and_verify_delta() {
    let report = run(&["solve", "--strategy", "pfraction", "--tau", "zero"], &delta_tensor());
    assert_eq!(report.code, 0, "{}", report.stderr);
    let v = report.json();
    assert_eq!(v["branches"].as_array().unwrap().len(), 2);
    assert_eq!(v["branches"][0]["prefix"], "1/(z2)");
    assert_eq!(v["branches"][1]["solution"], json!({"numer": ["-2"], "denom": ["-2", "1"]}));
    let check = run(&["verify"], &report.stdout);
    assert_eq!(check.code, 0);
    assert_eq!(check.json()["ok"], true);
}

#[test]
fn verify_against_other_tensor_reports_branch() {
    let dir = tempfile::tempdir().unwrap();
    let tensor = delta_tensor();
    let report = run(&["solve"], &tensor).stdout;
    let mut t: Value = serde_json::from_str(&tensor).unwrap();
    // entry (1, 1) feeds branch j = 1
    t["entries"][3]["value"] = json!("3");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, t.to_string()).unwrap();
    let r = run(&["verify", "--against", path.to_str().unwrap()], &report);
    assert_eq!(r.code, 1);
    let v = r.json();
    assert_eq!(v["ok"], false);
    assert_eq!(v["branches"][0]["ok"], true);
    assert_eq!(v["branches"][1]["first_mismatch"]["index"], 1);
}

#[test]
fn verify_with_explicit_order() {
    let report = run(&["solve"], &delta_tensor()).stdout;
    let r = run(&["verify", "--order", "1"], &report);
    assert_eq!((r.code, r.json()["order"].clone()), (0, json!(1)));
    let r = run(&["verify", "--order", "5"], &report);
    assert_eq!((r.code, r.error()), (2, "insufficient-moments".to_string()));
}

#[test]
fn pfraction_verb() {
    let r = run(&["pfraction"], r#"{"moments":["2","6"]}"#);
    let v = r.json();
    assert_eq!(v["atoms"], json!([{"a": ["-3", "1"], "b": "2"}]));
    assert_eq!(v["polynomials"][1], json!({"p": ["-3", "1"], "q": ["2"]}));
    assert_eq!(v["complete"], true);
}

#[test]
fn sfraction_verb() {
    let r = run(&["sfraction", "--alpha", "0"], r#"{"moments":["2","6"]}"#);
    let v = r.json();
    assert_eq!(v["alpha"], "0");
    assert_eq!(v["atoms"], json!([{"m": ["1/2"], "l": "2/3", "d": "1/2"}]));
    assert_eq!(v["stieltjes"][3], json!({"k": 2, "p": ["1", "-1/3"], "q": ["2/3"]}));

    let r = run(&["sfraction", "--alpha", "0"], r#"{"moments":["1","0","1","0"]}"#);
    assert_eq!((r.code, r.error()), (2, "alpha-singular".to_string()));
    let r = run(&["sfraction"], r#"{"moments":["1","0","1","0"]}"#);
    assert_eq!(r.json()["alpha"], "2");
}

#[test]
fn odd_sequence_solves_with_s_fraction() {
    let r = run(&["solve", "--strategy", "sfraction-alpha"], r#"{"moments":["2"]}"#);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["parity"], "odd");
    assert_eq!(v["branches"][0]["solution"], json!({"numer": ["-2"], "denom": ["0", "1"]}));
    assert_eq!(run(&["verify"], &r.stdout).code, 0);

    let r = run(&["solve"], r#"{"moments":["2"]}"#);
    assert_eq!(r.error(), "unsupported-parity");
}

#[test]
fn regular_strategy_reports_branch() {
    let mu = r#"{"dim":2,"atoms":[{"point":["1","1"],"mass":"1"},{"point":["-1","1"],"mass":"1"}]}"#;
    let t = run(&["moments-from-atoms", "--ell", "3"], mu).stdout;
    let r = run(&["solve", "--strategy", "sfraction"], &t);
    assert_eq!((r.code, r.error()), (2, "not-regular".to_string()));
    let r = run(&["solve", "--strategy", "sfraction-alpha"], &t);
    assert_eq!(r.code, 0);
    assert_eq!(run(&["verify"], &r.stdout).code, 0);
}

#[test]
fn custom_tau() {
    let r = run(&["solve", "--tau", "rational:[1]/[0,1]"], r#"{"moments":["2","6"]}"#);
    assert_eq!(r.json()["branches"][0]["solution"], json!({"numer": ["0", "-2"], "denom": ["1", "-3", "1"]}));
    let r = run(&["solve", "--tau", "inf"], r#"{"moments":["2","6"]}"#);
    assert_eq!(r.error(), "tau-class");
    let r = run(&["solve", "--tau", "bogus"], r#"{"moments":["2","6"]}"#);
    assert_eq!(r.error(), "usage");
}

#[test]
fn eval_report_and_measure() {
    let report = run(&["solve"], &delta_tensor()).stdout;
    assert_eq!(run(&["eval", "--point", "3,4"], &report).json(), json!({"value": "-1/4"}));
    assert_eq!(run(&["eval", "--point", "3,4"], DELTA).json(), json!({"value": "-1/2"}));
    let r = run(&["eval", "--point", "1,4"], &report);
    assert_eq!(r.error(), "pole");
    let r = run(&["eval", "--point", "1"], DELTA);
    assert_eq!(r.error(), "schema");
}

#[test]
fn diagnose_sums() {
    let r = run(&["diagnose", "--strategy", "sfraction", "--depth", "1"], r#"{"moments":["2","6"]}"#);
    let v = r.json();
    assert_eq!((v["m_sum"].clone(), v["l_sum"].clone()), (json!("1/2"), json!("2/3")));
    let r = run(&["diagnose", "--strategy", "pfraction"], r#"{"moments":["2","6"]}"#);
    assert_eq!(r.error(), "usage");
}

#[test]
fn pretty_output() {
    let r = run(&["pfraction", "--pretty"], r#"{"moments":["2","6"]}"#);
    assert_eq!(r.stdout, "-(2)/(z - 3 + tau)\n");
    let r = run(&["solve", "--pretty"], &delta_tensor());
    assert!(r.stdout.contains("+ 1/(z2^2) * (-2) / (z - 2)"), "{}", r.stdout);
}

#[test]
fn output_file_and_input_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("mu.json");
    let out = dir.path().join("t.json");
    std::fs::write(&input, DELTA).unwrap();
    let r = run(
        &["moments-from-atoms", "--ell", "1", input.to_str().unwrap(), "-o", out.to_str().unwrap()],
        "",
    );
    assert_eq!((r.code, r.stdout.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(out).unwrap(), delta_tensor());
}

#[test]
fn output_is_deterministic() {
    let t = delta_tensor();
    let a = run(&["solve", "--strategy", "sfraction-alpha"], &t).stdout;
    let b = run(&["solve", "--strategy", "sfraction-alpha"], &t).stdout;
    assert_eq!(a, b);
}

#[test]
fn error_documents() {
    assert_eq!(run(&["normal-indices"], "{").error(), "schema");
    assert_eq!(run(&["normal-indices"], r#"{"moments":[]}"#).error(), "schema");
    assert_eq!(run(&["normal-indices"], r#"{"moments":["1/0"]}"#).error(), "schema");
    let dup = r#"{"dim":1,"ell":0,"entries":[{"index":[0],"value":"1"},{"index":[0],"value":"1"}]}"#;
    assert_eq!(run(&["solve"], dup).error(), "schema");
    assert_eq!(run(&["solve"], r#"{"moments":["0","0"]}"#).error(), "no-common-normal-index");
    assert_eq!(run(&["frobnicate"], "").error(), "usage");
    assert_eq!(run(&["solve", "--strategy", "newton"], "").error(), "usage");
    assert_eq!(run(&["moments-from-atoms"], DELTA).error(), "usage");
    assert_eq!(run(&["verify", "/no/such/file"], "").error(), "io");
    assert_eq!(run(&["verify"], r#"{"moments":["1","2"]}"#).code, 2);
    let bad_mass = r#"{"dim":1,"atoms":[{"point":["1"],"mass":"-1"}]}"#;
    assert_eq!(run(&["moments-from-atoms", "--ell", "2"], bad_mass).error(), "schema");
}

#[test]
fn help_exits_cleanly() {
    let r = run(&["--help"], "");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("moments-from-atoms"));
}
