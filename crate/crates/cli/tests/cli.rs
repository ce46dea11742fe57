//! End-to-end runs of the `heckext` binary.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn heckext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckext")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = heckext(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// Whether `elt` is the single basis term with the given fields.
fn is_basis(elt: &Value, fields: &Value) -> bool {
    let terms = elt["terms"].as_array().unwrap();
    terms.len() == 1 && fields.as_object().unwrap().iter().all(|(k, v)| &terms[0][k] == v)
}

fn product(table: &Value, a: Value, b: Value) -> Value {
    table["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| is_basis(&r["a"], &a) && is_basis(&r["b"], &b))
        .unwrap_or_else(|| panic!("no row {a} * {b}"))["product"]
        .clone()
}

#[test]
fn hecke_j_quadratic_relation() {
    let t = json(&["table", "H_J", "--max-len", "1"]);
    assert_eq!(t["algebra"], "H_J");
    let s0 = json!({ "w": "s0" });
    let sq = product(&t, s0.clone(), s0);
    assert_eq!(sq["terms"], json!([{ "w": "s0", "c": -1 }]));
}

#[test]
fn ext_iwahori_x_squared() {
    let t = json(&["table", "E_J", "--max-len", "1"]);
    let x1 = json!({ "kind": "x", "w": "s0*theta^1" });
    let sq = product(&t, x1.clone(), x1);
    let terms = sq["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["kind"], "alpha");
    assert_eq!(terms[0]["w"], "s0*theta^1");
    assert_eq!(terms[0]["c"], -1);
}

#[test]
fn spherical_odd_square() {
    let t = json(&["table", "E_K", "--max-len", "1"]);
    let u = json!({ "kind": "uT", "w": 0 });
    let sq = product(&t, u.clone(), u);
    assert!(is_basis(&sq, &json!({ "kind": "B", "w": 0, "c": 1 })));
}

#[test]
fn oracle_reports() {
    let l = json(&["oracle", "L", "--precision", "3"]);
    assert_eq!(l["frattini_invariants"], json!([5, 5, 5]));
    assert_eq!(l["stable"], true);
    let j = json(&["oracle", "J+(2)", "--precision", "3"]);
    assert_eq!(j["frattini_invariants"], json!([5]));
}

#[test]
fn outputs_are_deterministic() {
    for args in
        [&["table", "E_K", "--max-len", "2", "--format", "csv"][..], &["verify", "double-cosets", "--seed", "7"]]
    {
        let a = heckext(args);
        let b = heckext(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
    let seq = heckext(&["table", "H", "--max-len", "2", "--sequential"]);
    let par = heckext(&["table", "H", "--max-len", "2"]);
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn exit_codes() {
    assert!(heckext(&["verify", "satake"]).status.success());
    assert!(!heckext(&["verify", "double-cosets"]).status.success());
    assert!(!heckext(&["verify", "no-such-id"]).status.success());
    assert!(!heckext(&["--p", "4", "verify", "satake"]).status.success());
    assert!(!heckext(&["table", "H_Q"]).status.success());
}

#[test]
fn out_directory_uses_the_configuration_tag() {
    let dir = std::env::temp_dir().join(format!("heckext-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = heckext(&["table", "H_K", "--max-len", "2", "--format", "csv", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let file = dir.join("table-H_K-p5-f1-l2-m3-s0.csv");
    let body = std::fs::read_to_string(&file).expect("file written");
    assert!(body.starts_with("a,b,product\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
