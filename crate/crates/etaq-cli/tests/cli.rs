//! End-to-end checks of the binary: output shapes, exit codes, and
//! byte-determinism of the scan output.

use std::process::{Command, Output};

fn etaq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etaq"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn expand_pentagonal_prefix() {
    let out = etaq(&["expand", "f1", "-N", "13"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 -1 -1 0 0 1 0 1 0 0 0 0 -1");
}

#[test]
fn expand_mod_agrees_with_exact_after_reduction() {
    let exact = stdout(&etaq(&["expand", "f2^3/f1/f4", "-N", "40"]));
    let modular = stdout(&etaq(&["expand", "f2^3/f1/f4", "-N", "40", "--mod", "25"]));
    let reduced: Vec<String> = exact
        .trim()
        .split(' ')
        .map(|v| v.parse::<i64>().unwrap().rem_euclid(25).to_string())
        .collect();
    assert_eq!(modular.trim(), reduced.join(" "));
}

#[test]
fn dissect_interleaves() {
    let out = etaq(&["dissect", "f1", "-m", "2", "-N", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // f1 = 1 - q - q^2 + q^5 + q^7 through 8 coefficients
    assert_eq!(text.lines().next().unwrap(), "0: 1 -1 0 0");
    assert_eq!(text.lines().nth(1).unwrap(), "1: -1 0 1 1");
}

#[test]
fn verify_single_and_unknown() {
    let out = etaq(&["verify", "f1-2dissect-a", "-N", "200"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));

    let out = etaq(&["verify", "no-such-id"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_small_bound() {
    let out = etaq(&["verify", "all", "-N", "120"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("24/24 passed"));

    let out = etaq(&["verify", "all", "-N", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theorem_pass_and_violation_exit_codes() {
    let out = etaq(&["theorem", "mod4", "--A", "f1", "-N", "200"]);
    assert!(out.status.success());

    let out = etaq(&["theorem", "mod4", "--A", "f3", "-N", "50"]);
    assert_eq!(out.status.code(), Some(2));

    let out = etaq(&["theorem", "mod4b", "--A", "f2/f1", "-N", "200"]);
    assert!(out.status.success());

    let out = etaq(&["theorem", "mod9", "--A", "f1/f3", "-N", "200"]);
    assert!(out.status.success());
}

#[test]
fn oracle_verdict_json() {
    let out = etaq(&["oracle", "f1_10", "--n", "0", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["vanishes"], serde_json::json!(false));

    // 12*6+5 = 77 = 7*11: inert odd order, vanishes with a named condition
    let out = etaq(&["oracle", "f1_10", "--n", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["vanishes"], serde_json::json!(true));
    assert_eq!(v["condition"]["kind"], serde_json::json!("OddOrderAtInertPrime"));
}

#[test]
fn oracle_equiv_small_bound() {
    for which in ["f1_10", "f1_5_f5", "f1f5", "f1_6"] {
        let out = etaq(&["oracle-equiv", which, "-N", "300"]);
        assert!(out.status.success(), "{}", which);
    }
}

#[test]
fn scan_deterministic_and_csv_shaped() {
    let dir = std::env::temp_dir().join("etaq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cand = dir.join("cands.txt");
    std::fs::write(&cand, "1: f1\n2: f1*f2\n").unwrap();
    let args = ["scan", "--table", "t2", "--candidates", cand.to_str().unwrap(), "-N", "80"];
    let a = etaq(&args);
    let b = etaq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "scan output must be byte-deterministic");
    let text = stdout(&a);
    assert!(text.starts_with("n,F,"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn scan_reports_bad_candidates_and_continues() {
    let dir = std::env::temp_dir().join("etaq-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cand = dir.join("bad.txt");
    std::fs::write(&cand, "f1\nnot-an-eta\nf2\n").unwrap();
    let out = etaq(&["scan", "--table", "t1", "--candidates", cand.to_str().unwrap(), "-N", "40"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3, "header plus the two good rows");
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn corollaries_run_at_small_bound() {
    let out = etaq(&["corollaries", "--nmax", "200"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4/4 passed"));
}

#[test]
fn malformed_expression_exits_2() {
    let out = etaq(&["expand", "g1", "-N", "10"]);
    assert_eq!(out.status.code(), Some(2));
}
