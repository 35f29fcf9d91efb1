use std::process::{Command, Output};

use hecke_ribbon::demazure::MultiPoly;
use hecke_ribbon::hecke::build_p;
use hecke_ribbon::series::SeriesElement;
use hecke_ribbon::{GeneralizedShape, HeckeModule, Kind};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke-ribbon"))
        .args(args)
        .env_remove("HECKE_RIBBON_MAX_ENUM")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn skew_example() {
    let v = json(&["series", "skew", "--num", "s[2,3]", "--den", "F[2]"]);
    let x = SeriesElement::from_json(&v).unwrap();
    assert_eq!(x, SeriesElement::parse(Kind::A, "s[1,2] + s[2,1] + 2*s[3]").unwrap());
    assert_eq!(x.to_json(), v);
}

#[test]
fn dot_has_one_node_per_tableau() {
    let out = run(&["module", "build", "--shape", "[0,2,1]", "--type", "B", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph module {"));
    let dim = build_p(&GeneralizedShape::parse(Kind::B, "[0,2,1]").unwrap()).unwrap().dim();
    assert_eq!(text.matches("[shape=box").count(), dim);
    let edges = text.lines().filter(|l| l.contains("->")).count();
    assert_eq!(edges, 3 * dim);
}

#[test]
fn verify_all_passes() {
    let v = json(&["verify", "all", "--type", "A", "--max-size", "5"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["suites"], v["suites_passed"]);
    assert!(v["checks"].as_u64().unwrap() > 1000);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["verify", "suite", "--name", "duality", "--type", "B", "--max-size", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["series", "comul", "--shape", "[2]+[1,1]"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn module_and_polynomial_json_round_trip() {
    let v = json(&["module", "build", "--shape", "[2,1]+[1]", "--type", "A"]);
    assert_eq!(HeckeModule::from_json(&v).unwrap().to_json(), v);
    let v = json(&["demazure", "apply", "--poly", "x1^2*x2", "--word", "1,2", "--bar"]);
    assert_eq!(MultiPoly::from_json(&v).unwrap().to_json(), v);
    let v = json(&["series", "convert", "--elem", "F[1,2]", "--to", "M"]);
    assert_eq!(SeriesElement::from_json(&v).unwrap().to_json(), v);
}

#[test]
fn q_specialization() {
    let v = json(&["series", "qribbon", "--shape", "[2,1]"]);
    assert_eq!(v, serde_json::json!([0, 1, 1]));
    let v = json(&["series", "qribbon", "--shape", "[2,1]", "--q-at", "1"]);
    assert_eq!(v, serde_json::json!(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["shape", "info", "--shape", "[2,"]).status.code(), Some(2));
    assert_eq!(run(&["series", "skew", "--num", "s[2,3]"]).status.code(), Some(2));
    assert_eq!(run(&["module", "check", "--shape", "[2,1]", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["group", "order", "--n", "12", "--type", "B"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_hecke-ribbon"))
        .args(["tableau", "list", "--shape", "[1]+[1]+[1]+[1]+[1]"])
        .env("HECKE_RIBBON_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_identity_exits_one() {
    let v = json(&["series", "identity", "--beta", "[3]", "--gamma", "[1,2]"]);
    assert_eq!(v["holds"], Value::Bool(true));
    let out = run(&["series", "identity", "--beta", "[1,2]", "--gamma", "[3]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_outputs() {
    let out = run(&["group", "info", "--window", "2,-1,3", "--type", "B", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("length"));
    let out = run(&["verify", "acceptance", "--criterion", "2", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "criterion  2 PASS dimensions");
}
