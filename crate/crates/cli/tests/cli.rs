use std::process::{Command, Output};

use serde_json::Value;

fn ratcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = ratcalc(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn constant_of_zero_star() {
    let o = ratcalc(&["const", "--expr", "0*", "--lambda", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn unit_transfer_coefficients() {
    let v = json(&[
        "fock",
        "transfer",
        "--n",
        "0",
        "--k",
        "0",
        "--weights",
        "unit",
        "--order",
        "4",
    ]);
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["1", "0", "1", "0", "2"])
    );
}

#[test]
fn square_of_star_over_naturals() {
    let o = ratcalc(&[
        "eval",
        "--semiring",
        "nat",
        "--expr",
        "(a*)(a*)",
        "--word",
        "aaa",
        "--lambda",
        "a=0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn exit_codes() {
    assert_eq!(
        ratcalc(&["const", "--expr", "a*", "--lambda", "a=1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ratcalc(&["const", "--expr", "(a"]).status.code(), Some(2));
    assert_eq!(
        ratcalc(&["reduce", "a*", "--semiring", "nat"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ratcalc(&["const", "--expr", "a", "--semiring", "reals"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ratcalc(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        ratcalc(&["fock", "transfer", "--n", "0", "--k", "-1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn compile_decompile_equiv() {
    let rep = json(&["compile", "--expr", "(ab)*a"]);
    assert_eq!(rep["semiring"], "rat");
    let text = rep.to_string();
    let e = json(&["decompile", &text]);
    let expr = e["expr"].as_str().unwrap();
    assert_eq!(json(&["equiv", &text, expr])["equivalent"], true);
    assert_eq!(json(&["equiv", &text, "a(ba)*"])["equivalent"], true);
    assert_eq!(json(&["equiv", &text, "(ab)*"])["equivalent"], false);
}

#[test]
fn reduce_and_rank() {
    let r = json(&["reduce", "a* + a*"]);
    assert_eq!(r["dim"], 1);
    assert_eq!(json(&["rank", "(a*)(a*)", "--maxlen", "4"])["rank"], 2);
}

#[test]
fn shift_and_products() {
    let o = ratcalc(&["shift", "(a*)(a*)", "--word", "aa", "--maxlen", "2"]);
    assert_eq!(stdout(&o), "_\t3\na\t4\naa\t5\n");
    let o = ratcalc(&[
        "product",
        "a",
        "a",
        "--law",
        "infiltration",
        "--semiring",
        "nat",
        "--maxlen",
        "3",
    ]);
    assert_eq!(stdout(&o), "a\t1\naa\t2\n");
    let o = ratcalc(&[
        "product",
        "a",
        "a",
        "--law",
        "shuffle",
        "--semiring",
        "nat",
        "--maxlen",
        "3",
    ]);
    assert_eq!(stdout(&o), "aa\t2\n");
    let o = ratcalc(&[
        "product", "a*", "(2<a)*", "--law", "hadamard", "--maxlen", "2",
    ]);
    assert_eq!(stdout(&o), "_\t1\na\t2\naa\t4\n");
    assert_eq!(
        ratcalc(&["product", "a", "a", "--law", "cauchy"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn eval_with_an_assignment() {
    let theta = r#"{"alphabet": ["a", "b"], "images": {"x": [{"word": "a", "coeff": "1"}, {"word": "b", "coeff": "1"}]}}"#;
    let o = ratcalc(&[
        "eval",
        "--semiring",
        "nat",
        "--expr",
        "x*",
        "--theta",
        theta,
        "--word",
        "abba",
    ]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn fock_words_and_dyck() {
    let v = json(&["fock", "words", "--n", "0", "--m", "0", "--len", "4"]);
    assert_eq!(v["words"], serde_json::json!(["b+b-b+b-", "b+b+b-b-"]));
    let v = json(&[
        "fock", "dyck", "--family", "Dplus", "--maxlen", "10", "--check",
    ]);
    assert_eq!(v["fixpoint"], true);
    assert_eq!(
        json(&["fock", "factor", "--n", "1", "--k", "-1", "--maxlen", "8"])["holds"],
        true
    );
    let v = json(&[
        "fock",
        "verify",
        "--n",
        "0",
        "--k",
        "0",
        "--weights",
        "boson",
        "--order",
        "8",
    ]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["coefficients"][8], "105");
}

#[test]
fn output_is_deterministic() {
    let args = ["compile", "--expr", "(a+2<b)*a", "--format", "json"];
    assert_eq!(stdout(&ratcalc(&args)), stdout(&ratcalc(&args)));
}
