use std::process::Command;

use gelmod::coxeter::{Factor, Family};
use gelmod_cli::{parse_group, run_args, to_json, Outcome};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("gelmod").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (Value, Outcome) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v: Value = serde_json::from_str(&out.stdout).expect("valid json");
    (v, out)
}

#[test]
fn parses_group_expressions() {
    let p = parse_group("A2xD6xE7").unwrap();
    assert_eq!(p.factors().len(), 3);
    assert!(matches!(p.factors()[2], Factor::ClassificationOnly(Family::E7)));
    assert_eq!(parse_group("H3").unwrap().to_string(), "H3");
    assert_eq!(parse_group("I2(7)").unwrap().computable_factors().unwrap()[0].param(), 7);
    assert_eq!(parse_group("B3xB3").unwrap().factors().len(), 2);
    assert!(parse_group("Q5").is_err());
}

#[test]
fn verdict_with_classification_only_factor() {
    let (v, out) = json(&["verdict", "A2xE7"]);
    assert_eq!(out.code, 0);
    assert_eq!(v["isGelfand"], Value::Bool(false));
    assert_eq!(v["method"], "classified");
}

#[test]
fn verdicts() {
    for (g, expected, method) in [
        ("A5", true, "computed"),
        ("B4xD5xH3", true, "computed"),
        ("H4", true, "classified"),
        ("D4", false, "computed"),
        ("A1xD6", false, "computed"),
        ("E8", false, "classified"),
        ("D10", false, "computed"),
    ] {
        let (v, _) = json(&["verdict", g]);
        assert_eq!(v["isGelfand"], Value::Bool(expected), "{g}");
        assert_eq!(v["method"], method, "{g}");
    }
    let (v, _) = json(&["verdict", "D4"]);
    let w = v["witnesses"].as_array().unwrap();
    assert!(w.iter().all(|x| x["multiplicity"] == 2));
    assert!(!w.is_empty());
}

#[test]
fn icosahedral_fake_degrees() {
    let (v, out) = json(&["fake-degrees", "H3"]);
    assert_eq!(out.code, 0);
    let reports = v["factors"][0]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 10);
    let v4 = reports.iter().find(|r| r["label"] == "V4'").unwrap();
    let coeffs: Vec<i64> = v4["fakeDegree"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    let mut expected = vec![0; 12];
    for k in [3, 7, 9, 11] {
        expected[k] = 1;
    }
    assert_eq!(coeffs, expected);
    assert_eq!(v4["p"], 3);
    assert_eq!(v4["firstMultiplicity"], 1);
    assert_eq!(v4["dim"], 4);
}

#[test]
fn oracle_passes() {
    let out = run(&["oracle", "B2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("pass, 5 labels compared"), "{}", out.stdout);
    let (v, _) = json(&["oracle", "D4xI2(5)"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["factors"][0]["labelsCompared"], 13);
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["fake-degrees", "A2xH3"],
        vec!["verdict", "A3xD4"],
        vec!["model", "A1xA2", "--kernel"],
        vec!["oracle", "B3"],
        vec!["dihedral-model", "6"],
        vec!["check", "I2(5)"],
        vec!["verdict", "A2xZ9"],
    ] {
        let (v, out) = json(&args);
        assert_eq!(to_json(&v), out.stdout, "{args:?}");
        assert!(!out.stdout.contains('.'), "no floating point in {args:?}");
    }
}

#[test]
fn model_with_kernel() {
    let (v, out) = json(&["model", "A1xA2", "--kernel"]);
    assert_eq!(out.code, 0);
    assert_eq!(v["total"], 8);
    assert_eq!(v["kernel"]["matches"], Value::Bool(true));
    let (v, _) = json(&["model", "A1xA1"]);
    let dims: Vec<(u64, u64)> = v["gradedDimensions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["degree"].as_u64().unwrap(), e["dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(dims, [(0, 1), (1, 2), (2, 1)]);
}

#[test]
fn dihedral_model() {
    let (v, out) = json(&["dihedral-model", "5"]);
    assert_eq!(out.code, 0);
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["annihilated"], Value::Bool(true));
    assert_eq!(v["basis"][5]["polynomial"], "z^5 - zb^5");
}

#[test]
fn check_suite() {
    let out = run(&["check", "B2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let (v, out) = json(&["check", "A2xI2(4)"]);
    assert_eq!(out.code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"), "{checks:?}");
    let (v, out) = json(&["check", "B5", "--cap", "100"]);
    assert_eq!(out.code, 0);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "skipped"));
}

#[test]
fn errors_are_reported() {
    let (v, out) = json(&["fake-degrees", "E7"]);
    assert_eq!(out.code, 2);
    assert_eq!(v["error"]["kind"], "UnsupportedFamily");
    let (v, out) = json(&["verdict", "A2x"]);
    assert_eq!(out.code, 2);
    assert_eq!(v["error"]["kind"], "ParseError");
    let (v, _) = json(&["verdict", "Q3"]);
    assert_eq!(v["error"]["kind"], "UnknownType");
    let (v, _) = json(&["model", "B6", "--kernel", "--cap", "100"]);
    assert_eq!(v["error"]["kind"], "OrderExceedsCap");
    assert!(v["error"]["message"].as_str().unwrap().contains("46080"));
    let out = run(&["dihedral-model", "2"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error:"));
    assert_eq!(run(&["no-such-command"]).code, 2);
}

#[test]
fn csv_output() {
    let out = run(&["fake-degrees", "A2", "--format", "csv"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "factor,label,p,firstMultiplicity,dim,fakeDegree");
    assert_eq!(lines.len(), 4);
    assert!(lines.contains(&"A2,\"[1,1,1]\",3,1,1,0 0 0 1"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_gelmod");
    let ok = Command::new(bin).args(["oracle", "A3"]).env("GELMOD_THREADS", "1").output().unwrap();
    assert!(ok.status.success());
    let bad = Command::new(bin).args(["oracle", "E8"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
