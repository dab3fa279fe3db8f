use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn pisr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pisr"))
        .args(args)
        .output()
        .unwrap()
}

fn pisr_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pisr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = pisr(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn k0_of_a_leavitt_monoid() {
    let o = pisr(&["--json", "k0", "monoid", "I | 3I=I"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"invariant_factors":[2],"generators":{"I":[1]}}"#
    );
    let shaped = json(&["k0", "monoid", "--shape", "g | 4g = g"]);
    assert_eq!(shaped["shape_report"]["conical"], true);
    assert_eq!(shaped["invariant_factors"], serde_json::json!([3]));
}

#[test]
fn k0_group_of_a_matrix() {
    let g = json(&["k0", "group", "2 0; 0 3"]);
    assert_eq!(g["invariant_factors"], serde_json::json!([6]));
    let free = json(&["k0", "group", "1 -1", "--k", "2"]);
    assert_eq!(free["invariant_factors"], serde_json::json!([0]));
}

#[test]
fn leavitt_witness_and_its_certificate() {
    let o = pisr(&["--json", "leavitt", "witness", "--n", "2", "y1*x2"]);
    let cert = stdout(&o);
    assert_eq!(cert.trim(), r#"{"beta":"x1","gamma":"y2","check":"1"}"#);
    let ok = pisr_stdin(
        &["--json", "--n", "2", "--verify-cert", "-", "leavitt", "witness", "y1*x2"],
        &cert,
    );
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), r#"{"valid":true}"#);
    let bad = pisr_stdin(
        &["--json", "--n", "2", "--verify-cert", "-", "leavitt", "witness", "y1*x2"],
        r#"{"beta":"x2","gamma":"y2","check":"1"}"#,
    );
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout(&bad).trim(), r#"{"valid":false}"#);
}

#[test]
fn uinf_certificates_verify() {
    let expr = "2*y1*x2 + y2";
    let cert = stdout(&pisr(&["--json", "leavitt", "witness", "--uinf", expr]));
    let ok = pisr_stdin(&["--json", "--verify-cert", "-", "leavitt", "witness", "--uinf", expr], &cert);
    assert_eq!(stdout(&ok).trim(), r#"{"valid":true}"#, "{cert}");
}

#[test]
fn leavitt_normal_forms() {
    let nf = json(&["leavitt", "nf", "--n", "2", "y2*x2 + y1*x1"]);
    assert_eq!(nf["normal_form"], "1");
    assert_eq!(json(&["leavitt", "nf", "--n", "2", "e"])["in_ideal"], true);
    let o = pisr(&["--json", "leavitt", "witness", "--n", "2", "e"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn skew_witness_round_trip() {
    let expr = "y0*(1 - x0)^-1 + y1*x1";
    let o = pisr(&["--json", "--n", "1", "skew", "witness", expr]);
    assert_eq!(o.status.code(), Some(0));
    let cert = stdout(&o);
    let ok = pisr_stdin(&["--json", "--n", "1", "--verify-cert", "-", "skew", "witness", expr], &cert);
    assert_eq!(stdout(&ok).trim(), r#"{"valid":true}"#);
    let mut tampered: Value = serde_json::from_str(&cert).unwrap();
    tampered["m"] = Value::String("x1*x1".into());
    let bad = pisr_stdin(
        &["--json", "--n", "1", "--verify-cert", "-", "skew", "witness", expr],
        &tampered.to_string(),
    );
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn skew_queries() {
    assert_eq!(json(&["--n", "2", "skew", "member", "y1*e*(1 + x0)"])["in_ideal"], true);
    assert_eq!(json(&["--n", "2", "skew", "member", "1 + y0"])["in_ideal"], false);
    assert_eq!(json(&["--n", "1", "skew", "equal", "y0*x0 + y1*x1", "1"])["equal"], true);
    let p = json(&["--n", "1", "skew", "mul", "x0", "y0*y1"]);
    assert_eq!(p["product"], "y1");
    assert_eq!(json(&["--n", "1", "skew", "mul", "e", "e"])["product"], json(&["--n", "1", "skew", "mul", "e", "1"])["product"]);
}

#[test]
fn realize_case_two() {
    let r = json(&["realize", "build", "--from", "0", "--to", "2", "--mult", "1"]);
    assert_eq!(r["generators"]["case"], 2);
    assert_eq!(r["generators"]["b"][0][0][0], "y0");
    assert_eq!(r["passed"], true);
    let v = json(&["realize", "verify", "--from", "0", "--to", "0", "--mult", "-1"]);
    assert_eq!((v["case"].clone(), v["passed"].clone()), (3.into(), true.into()));
    assert_eq!(pisr(&["realize", "build", "--from", "1", "--to", "2", "--mult", "1"]).status.code(), Some(2));
    assert_eq!(pisr(&["realize", "build", "--from", "2", "--to", "4", "--mult", "1"]).status.code(), Some(2));
}

#[test]
fn realize_chain_from_file() {
    let path = std::env::temp_dir().join(format!("pisr-chain-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"groups":[{"factors":[2,0],"unit":[1,1]},{"factors":[2,0],"unit":[1,1]},{"factors":[2,0],"unit":[1,1]}],
            "maps":[[[1,0],[0,1]],[[1,0],[0,1]]]}"#,
    )
    .unwrap();
    let r = json(&["realize", "chain", path.to_str().unwrap()]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["plan"]["steps"].as_array().unwrap().len(), 2);
    std::fs::write(&path, r#"{"groups":[{"factors":[2],"unit":[1]},{"factors":[2],"unit":[1]}],"maps":[[[2]]]}"#).unwrap();
    assert_eq!(pisr(&["realize", "chain", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn series_commands() {
    let inv = json(&["series", "invert", "1 - x0", "--precision", "5"]);
    assert_eq!(inv["dimension"], 1);
    for w in ["1", "x0", "x0^2", "x0^3", "x0^4"] {
        assert_eq!(inv["coefficients"][w], "1");
    }
    let d = json(&["series", "transduce", "--letter", "1", "x0*x1 + 3*x1"]);
    assert_eq!(d["series"], "3 + x0");
    assert_eq!(json(&["series", "equal", "(1 - x0)^-1", "1 + x0*(1 - x0)^-1"])["equal"], true);
    assert_eq!(json(&["series", "equal", "x0*x1", "x1*x0"])["equal"], false);
    let p = json(&["--field", "fp:7", "series", "eval", "x0 + 6*x0 + 10"]);
    assert_eq!(p["series"], "3");
    let t = json(&["--field", "qt:1", "series", "eval", "t1*x0/t1"]);
    assert_eq!(t["series"], "x0");
}

#[test]
fn exit_codes() {
    let o = pisr(&["series", "eval", "x0 +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 5"));
    assert_eq!(pisr(&["series", "invert", "x0"]).status.code(), Some(1));
    assert_eq!(pisr(&["series", "eval", "x0^-1"]).status.code(), Some(1));
    assert_eq!(pisr(&["--field", "r", "series", "eval", "1"]).status.code(), Some(2));
    assert_eq!(pisr(&["--field", "fp:8", "series", "eval", "1"]).status.code(), Some(2));
    assert_eq!(pisr(&["series", "eval", "t1"]).status.code(), Some(2));
    assert_eq!(pisr(&["bogus"]).status.code(), Some(2));
    assert_eq!(pisr(&["--verify-cert", "x", "series", "eval", "1"]).status.code(), Some(2));
    assert_eq!(pisr(&["--help"]).status.code(), Some(0));
}

#[test]
fn fixed_seed_output_is_identical() {
    let args = ["--json", "--seed", "7", "selftest", "--criterion", "1", "--criterion", "8"];
    let (a, b) = (pisr(&args), pisr(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["passed"] == true));
    let s = ["--json", "series", "eval", "(1 - x0 - 2*x1)^-1", "--precision", "6"];
    assert_eq!(pisr(&s).stdout, pisr(&s).stdout);
    assert_eq!(pisr(&["selftest", "--criterion", "13"]).status.code(), Some(2));
}
