use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eisenkit")).args(args).env_remove("EISENKIT_PRIME_BOUND").output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json output");
    (out.status.code().unwrap(), v)
}

fn value(v: &Value) -> f64 {
    v["value"].as_str().unwrap().parse().unwrap()
}

#[test]
fn expand_lists_both_catalan_branches() {
    let (code, v) = json(&["expand", "z*w^2 - w + 1", "--terms", "20"]);
    assert_eq!(code, 0);
    let branches = v["jobs"][0]["result"]["branches"]["branches"].as_array().unwrap();
    let kappas: Vec<i64> = branches.iter().map(|b| b["kappa"].as_i64().unwrap()).collect();
    assert_eq!(kappas, vec![0, -1]);
    assert_eq!(branches[1]["coefficients"][0], serde_json::json!([-1, "1"]));
}

#[test]
fn expand_ramified_cycle() {
    let out = run(&["expand", "w^2 - z"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("e = 2, kappa = 1"), "{text}");
    assert_eq!(text.matches("branch ").count(), 1);
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["expand", "w^^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("parse error"));
    assert_eq!(run(&["expand", "w", "--field", "2*x^2 - 1"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "w", "--precision", "32"]).status.code(), Some(2));
}

#[test]
fn binomial_bounds() {
    let (code, v) = json(&["bounds", "w^2 - z - 1"]);
    assert_eq!(code, 0);
    let certs = v["jobs"][0]["result"]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 1);
    let c = &certs[0];
    assert_eq!(c["variant"], "regular");
    assert_eq!(c["heights"]["h_A"]["exact"], "log(4) + 2*log(6)");
    assert!((value(&c["heights"]["h_A"]) - 144f64.ln()).abs() < 1e-12);
    assert!((value(&c["theorem_bound"]) - (6.0 * 2f64.ln() + 14.0)).abs() < 1e-12);
    assert_eq!(c["height_check"]["holds"], true);
}

#[test]
fn non_separable_needs_flag() {
    assert_eq!(run(&["bounds", "(w - z)^2"]).status.code(), Some(3));
    let (code, v) = json(&["bounds", "(w - z)^2", "--squarefree"]);
    assert_eq!(code, 0);
    assert_eq!(v["jobs"][0]["squarefree_part"], "w - z");
}

#[test]
fn general_variant_for_square_root() {
    let (code, v) = json(&["bounds", "w^2 - z", "--variant", "general"]);
    assert_eq!(code, 0);
    let c = &v["jobs"][0]["result"]["certificates"][0];
    assert_eq!((c["e"].as_i64(), c["kappa"].as_i64()), (Some(2), Some(1)));
    assert!((value(&c["theorem_bound"]) - (6.0 * 2f64.ln() + 28.0)).abs() < 1e-12);
}

#[test]
fn regular_variant_on_a_pole_is_a_precondition_failure() {
    assert_eq!(run(&["bounds", "z*w^2 - w + 1", "--variant", "regular"]).status.code(), Some(3));
}

#[test]
fn verify_binomial_to_200_terms() {
    let (code, v) = json(&["verify", "w^2 - z - 1", "--terms", "200"]);
    assert_eq!(code, 0);
    for c in v["jobs"][0]["result"]["certificates"].as_array().unwrap() {
        assert_eq!(c["verification"]["max_k"], 200);
        assert!(c["verification"]["failures"].as_array().unwrap().is_empty());
    }
}

#[test]
fn exceptional_binomial() {
    let (code, v) = json(&["exceptional", "w^2 - z - 1", "--terms", "40"]);
    assert_eq!(code, 0);
    let r = &v["jobs"][0]["result"]["exceptional"];
    assert_eq!(r["observed"], serde_json::json!(["2"]));
    assert!((value(&r["bound"]) - 10.1589).abs() < 1e-3);
    assert_eq!(v["jobs"][0]["result"]["prime_sum"]["n_max"], 10_000);
}

#[test]
fn prime_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_eisenkit"))
        .args(["exceptional", "w^2 - z - 1", "--terms", "4", "--format", "json"])
        .env("EISENKIT_PRIME_BOUND", "100")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["jobs"][0]["result"]["prime_sum"]["n_max"], 100);
}

#[test]
fn discriminant_of_sqrt2_branches() {
    let (code, v) = json(&["disc", "w^2 - 2 - 2*z", "--field", "x^2 - 2"]);
    assert_eq!(code, 0);
    let r = &v["jobs"][0]["result"];
    for row in r["discriminant"]["branches"].as_array().unwrap() {
        assert!((value(&row["actual"]) - 1.0397).abs() < 1e-4);
        assert!((value(&row["bound"]) - 70.18).abs() < 0.01);
    }
    for c in r["chains"].as_array().unwrap() {
        assert_eq!(c["check"]["holds"], true);
    }
}

#[test]
fn unresolved_order_exits_4() {
    let out = run(&["disc", "(w - z)^2 - z^10", "--terms", "3"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().contains("--terms"));
    assert_eq!(run(&["disc", "(w - z)^2 - z^10", "--terms", "12"]).status.code(), Some(0));
}

#[test]
fn lemmas_pass() {
    let (code, v) = json(&["lemmas", "w^3 - 3*z*w + z^2 - 7", "--alpha", "5/3"]);
    assert_eq!(code, 0);
    assert_eq!(v["jobs"][0]["result"]["lemmas"]["violations"], 0);
}

#[test]
fn json_is_deterministic() {
    let a = run(&["verify", "z*w^2 - w + 1", "--terms", "30", "--format", "json"]);
    let b = run(&["verify", "z*w^2 - w + 1", "--terms", "30", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn batch_file_with_field_lines() {
    let dir = std::env::temp_dir().join(format!("eisenkit-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("jobs.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# binomial first\nw^2 - z - 1\nfield: x^2 - 2\nw^2 - 2 - 2*z\n\nfield: Q\nw^2 - 2").unwrap();
    drop(f);
    let (code, v) = json(&["expand", "--input", path.to_str().unwrap(), "--terms", "6"]);
    assert_eq!(code, 0);
    let jobs = v["jobs"].as_array().unwrap();
    assert_eq!(jobs.len(), 3);
    assert_eq!(jobs[1]["field"], "x^2 - 2");
    assert_eq!(jobs[1]["result"]["branches"]["complete"], true);
    assert_eq!(jobs[2]["field"], Value::Null);
    assert_eq!(jobs[2]["result"]["branches"]["complete"], false);
    assert_eq!(jobs[0]["line"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
