use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasidaha")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn a1_epoly_has_three_terms() {
    let v = json(&run(&["compute", "--type", "A1", "--c", "0", "--y", "-1", "--object", "epoly"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["header"]["object"], "epoly");
}

#[test]
fn base_point_is_a_monomial() {
    let v = json(&run(&["compute", "--type", "A2", "--c", "1/3,1/3", "--y", "1/3,1/3", "--object", "epoly"]));
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "1");
}

#[test]
fn symbolic_output_matches_golden() {
    let out = run(&["compute", "--type", "A1", "--c", "0", "--y", "-1", "--object", "epoly", "--backend", "symbolic"]);
    assert!(out.status.success());
    let golden = include_str!("golden/a1_epoly_symbolic.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn output_is_stable() {
    let args = ["compute", "--type", "B2", "--c", "0,0", "--y", "1,-1", "--object", "ppoly", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn point_outside_alcove_is_rejected() {
    let out = run(&["compute", "--type", "A2", "--c", "2,0", "--y", "2,0", "--object", "epoly"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotInFundamentalAlcove"));
}

#[test]
fn bad_quadratic_form_is_rejected() {
    let out = run(&["compute", "--type", "B2", "--c", "0,0", "--y", "0,0", "--object", "metapoly", "--meta", "2,1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidQuadraticForm"));
}

#[test]
fn verify_relations_passes() {
    let out = run(&["verify", "--suite", "relations", "--types", "A1", "--trials", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|r| r["status"] == "PASS"));
}
