use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn artinlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artinlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let out = artinlab(args);
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}: {text:?}"));
    (v, out.status.code().expect("exit code"))
}

#[test]
fn golden_outputs() {
    let cases: &[(&[&str], &str)] = &[
        (&["hilbert", &data("perazzo_B.alg")], r#"{"hilbert":[1,5,5,1]}"#),
        (&["dominance", "2,2,1,1", "3,2,1"], r#"{"verdict":"LT"}"#),
        (&["cg-tensor", "2", "4,2,2,2,1,1"], r#"{"partition":[5,3,3,3,3,2,2,1,1,1]}"#),
        (&["conjugate", "10,6,6,1,1"], r#"{"partition":[5,3,3,3,3,3,1,1,1,1]}"#),
        (&["cg-tensor", "3", "3", "--char", "5"], r#"{"partition":[5,3,1]}"#),
        (
            &["hilbert", &data("g333_A.alg"), "--local"],
            r#"{"hilbert":[1,1,2,1,2,1,1],"local_hilbert":[1,2,2,1,1,1,1]}"#,
        ),
    ];
    for (args, expected) in cases {
        let out = artinlab(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim_end(), *expected, "{args:?}");
    }
}

#[test]
fn perazzo_commands() {
    let (v, code) = json_of(&["generic-jordan", &data("perazzo_B.alg"), "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["partition"], json!([4, 2, 2, 2, 1, 1]));
    assert_eq!(v["seed"], json!(3));

    let (v, _) = json_of(&["lefschetz", &data("perazzo_B.alg")]);
    assert_eq!(v["verdict"], json!(false));

    let (v, code) = json_of(&["theorem-check", &data("perazzo.triple")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], json!("GT"));
    assert_eq!(v["partition"], json!([5, 3, 3, 3, 3, 3, 1, 1, 1, 1]));
    assert_eq!(v["hilbert"], json!([1, 6, 10, 6, 1]));

    let (v, _) = json_of(&["verify-ext", &data("perazzo.triple")]);
    assert_eq!(v["verdict"], json!(true));
    let (v, _) = json_of(&["verify-ext", &data("perazzo_ill_defined.triple")]);
    assert_eq!(v["verdict"], json!(false));
    assert_eq!(v["report"]["well_defined"], json!([true, false]));
}

#[test]
fn dual_extension_commands() {
    let b = data("perazzo_B.alg");
    let (v, code) = json_of(&["dual-ext", &b, "--m", "1", "--g", "X^[2]UV+XYV^[2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["hilbert"], json!([1, 6, 10, 6, 1]));
    assert_eq!(v["verdict"], json!(true));

    let (v, code) = json_of(&["dual-ext", &b, "--m", "1", "--g", "X^[4]"]);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["error"], json!("ConditionFails"));
    assert_eq!(v["witness"].as_array().map(Vec::len), Some(2));

    let (v, code) = json_of(&["valid-g", &b, "--m", "1"]);
    assert_eq!(code, 0);
    let basis = v["report"]["basis"].as_array().unwrap();
    assert_eq!(v["report"]["dimension"], json!(basis.len()));
    assert!(!basis.is_empty());
}

#[test]
fn deform_command() {
    for triple in ["perazzo.triple", "trivial.triple"] {
        let (v, code) = json_of(&["deform", &data(triple), "--ts", "1,2,-1,3"]);
        assert_eq!(code, 0, "{triple}");
        assert_eq!(v["verdict"], json!(true));
        assert_eq!(v["report"]["diagram_t"].as_array().map(Vec::len), Some(4));
    }
    let (v, _) = json_of(&["deform", &data("perazzo.triple"), "--ellA", "t"]);
    assert_eq!(v["partition"], json!([5, 3, 3, 3, 3, 2, 2, 1, 1, 1]));
    let (_, code) = json_of(&["deform", &data("perazzo.triple"), "--ts", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn g333_commands() {
    let (v, _) = json_of(&["jordan", &data("g333_A.alg"), "--element", "b+c"]);
    assert_eq!(v["partition"], json!([7, 2]));
    assert_eq!(v["verdict"], json!("SLJT"));
    let (v, _) = json_of(&["lefschetz", &data("g333_A.alg"), "--mode", "sljt"]);
    assert_eq!(v["verdict"], json!(true));
    let (v, _) = json_of(&["verify-ext", &data("g333.triple")]);
    assert_eq!(v["verdict"], json!(true));
    let (v, _) = json_of(&["coinv", "g333"]);
    assert_eq!(v["report"]["dimension"], json!(54));
    assert_eq!(v["report"]["free_extension"]["verdict"], json!(true));
}

#[test]
fn tensor_command() {
    let m = data("monomial_3_4.alg");
    let (v, _) = json_of(&["tensor", &m, &m]);
    assert_eq!(v["report"]["dimension"], json!(144));
    assert_eq!(v["hilbert"][5], json!(28));
}

#[test]
fn exit_codes() {
    assert_eq!(artinlab(&[]).status.code(), Some(1));
    assert_eq!(artinlab(&["hilbert"]).status.code(), Some(1));
    assert_eq!(artinlab(&["conjugate", "1,2"]).status.code(), Some(1));
    assert_eq!(artinlab(&["hilbert", "missing.alg"]).status.code(), Some(1));
    assert_eq!(artinlab(&["cg-tensor", "3", "3", "--char", "2"]).status.code(), Some(2));
    let out = artinlab(&["dominance", "3", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(artinlab(&["jordan", &data("perazzo_B.alg"), "--element", "1+x"]).status.code(), Some(2));
    assert_eq!(artinlab(&["jordan", &data("perazzo_B.alg"), "--element", "q"]).status.code(), Some(1));
}

#[test]
fn parse_errors_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    std::fs::write(&path, "field Q\nvars x y\nideal x^2; y^\n").unwrap();
    let out = artinlab(&["hilbert", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn deterministic_output() {
    let args = ["generic-jordan", &data("perazzo_B.alg"), "--mode", "local", "--seed", "11"];
    let a = artinlab(&args);
    let b = artinlab(&args);
    assert_eq!(a.stdout, b.stdout);
    let t = ["theorem-check", &data("perazzo.triple"), "--seed", "5"];
    assert_eq!(artinlab(&t).stdout, artinlab(&t).stdout);
}

#[test]
fn printed_polynomials_reparse() {
    let b = data("perazzo_B.alg");
    let (v, _) = json_of(&["generic-jordan", &b]);
    let w = v["witness"].as_str().unwrap().to_string();
    let (again, code) = json_of(&["jordan", &b, "--element", &w]);
    assert_eq!(code, 0);
    assert_eq!(again["partition"], v["partition"]);
    assert_eq!(again["report"]["element"], json!(w));
}
