//! End-to-end checks of the command-line interface: output schemas, exit
//! codes, and the documented flag validation.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sts-census"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn sts-census")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn table_csv_golden_head() {
    let out = run(&["table", "--n-min", "4", "--n-max", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "n,A,B,C,D,E",
            "4,0,3,1,0,4",
            "5,5,11,6,2,24",
            "6,6,30,12,0,48",
            "7,35,73,40,12,160",
            "8,48,122,60,10,240",
        ]
    );
}

#[test]
fn table_json_lines() {
    let out = run(&["table", "--n-min", "4", "--n-max", "5", "--format", "json"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 4);
    assert_eq!(rows[0]["b"], 3);
    assert_eq!(rows[0]["ratio_c"], serde_json::json!([1, 4]));
    assert_eq!(rows[1]["e"], 24);
}

#[test]
fn densities_first_row() {
    let out = run(&["densities", "--n-min", "4", "--n-max", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text, "n,rA,rB,rC,rD\n4,0,0.75,0.25,0\n");
}

#[test]
fn densities_json_lines() {
    let out = run(&["densities", "--n-min", "4", "--n-max", "5", "--format", "json"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["rC"], 0.25);
    assert_eq!(rows[0]["rB"], 0.75);
    assert_eq!(rows[1]["n"], 5);
}

#[test]
fn bruteforce_json_report() {
    let out = run(&["bruteforce", "--n", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["H11"], serde_json::json!({"A": 0, "B": 3, "C": 1, "D": 0}));
    assert_eq!(v["H2"], serde_json::json!({"F": 4, "G": 5}));
    assert!(v["elapsed_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_suite_passes_with_exit_0() {
    let out = run(&["verify", "--suite", "quadruple-lemma", "--n-max", "24"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn verify_injected_failure_exits_1() {
    let out = bin()
        .args(["verify", "--suite", "param-oracle", "--n-max", "24"])
        .env("STS_VERIFY_INJECT_FAILURE", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    // empty range
    assert_eq!(run(&["table", "--n-min", "10", "--n-max", "9"]).status.code(), Some(2));
    // below the census domain
    assert_eq!(run(&["table", "--n-min", "3", "--n-max", "9"]).status.code(), Some(2));
    // over the additive-convolution cap
    assert_eq!(
        run(&["table", "--n-min", "4", "--n-max", "10001"]).status.code(),
        Some(2)
    );
    // brute force out of range, and n = 8 without the opt-in
    assert_eq!(run(&["bruteforce", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["bruteforce", "--n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["bruteforce", "--n", "8"]).status.code(), Some(2));
    // unknown suite is a clap value error
    assert_eq!(run(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
    // bad worker count
    assert_eq!(
        run(&["table", "--n-min", "4", "--n-max", "5", "--workers", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("sts-census-test-{}.csv", std::process::id()));
    let piped = run(&["table", "--n-min", "4", "--n-max", "20"]);
    let filed = run(&["table", "--n-min", "4", "--n-max", "20", "--out", path.to_str().unwrap()]);
    assert!(filed.status.success());
    let from_file = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file, piped.stdout);
}

#[test]
fn workers_flag_is_accepted() {
    let out = run(&["table", "--n-min", "4", "--n-max", "40", "--workers", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 38);
}
