use std::process::Command;

use serde_json::Value;
use sugawara::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn go(args: &str) -> sugawara::cli::Outcome {
    run(std::iter::once("sugawara").chain(args.split_whitespace()))
}

#[test]
fn compute_phi_json() {
    let out = go("compute phi --M 1 --n 1 --m 2 --format json");
    assert_eq!(out.status, EXIT_PASS, "{}", out.output);
    let v: Value = serde_json::from_str(&out.output).unwrap();
    assert_eq!(v["M"], 1);
    assert_eq!(v["n"], 1);
    assert_eq!(v["m"], 2);
    assert!(!v["terms"].as_array().unwrap().is_empty());
    let term = &v["terms"][0];
    assert!(term["monomial"].is_array() && term["coeffK"].is_array());
    assert_eq!(v["expansion"][0]["lambda"], serde_json::json!([1, 1]));
    assert_eq!(v["expansion"][0]["c"], 1);
}

#[test]
fn verify_annihilation_passes() {
    let out = go("verify annihilation --M 1 --n 1 --m 3");
    assert_eq!(out.status, EXIT_PASS, "{}", out.output);
    let v: Value = serde_json::from_str(&out.output).unwrap();
    assert_eq!(v["campaign"], "annihilation");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn verify_brauer_passes() {
    let out = go("verify brauer --m 4");
    assert_eq!(out.status, EXIT_PASS, "{}", out.output);
}

#[test]
fn negative_modes_do_not_annihilate() {
    let out = go("verify annihilation --M 3 --n 0 --m 2 --modes 0,1,-1");
    assert_eq!(out.status, EXIT_FAIL, "{}", out.output);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(go("verify nonsense").status, EXIT_USAGE);
    assert_eq!(go("compute phi --m 1").status, EXIT_USAGE);
    assert_eq!(go("compute rep").status, EXIT_USAGE);
    assert_eq!(go("verify centrality --z 1/0").status, EXIT_USAGE);
    assert_eq!(go("verify commutativity --degrees 2,7").status, EXIT_USAGE);
}

#[test]
fn singular_parameters_are_skipped_not_failed() {
    let out = go("verify phi --M 0 --n 1 --m 2 --format text");
    assert_eq!(out.status, EXIT_PASS, "{}", out.output);
    assert!(out.output.contains("skip"), "{}", out.output);
}

#[test]
fn output_is_deterministic() {
    let cmd = "verify rep --M 3 --n 0 --m 2 --samples 3 --seed 5 --no-timing";
    let a = go(cmd);
    let b = go(cmd);
    assert_eq!(a.status, EXIT_PASS, "{}", a.output);
    assert_eq!(a.output, b.output);
}

#[test]
fn text_and_json_agree_on_statuses() {
    let json = go("verify psi --M 3 --n 0 --m 2");
    let text = go("verify psi --M 3 --n 0 --m 2 --format text");
    let v: Value = serde_json::from_str(&json.output).unwrap();
    let from_json: Vec<String> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap().to_string())
        .collect();
    let from_text: Vec<String> = text
        .output
        .lines()
        .filter_map(|l| match l.split_whitespace().next() {
            Some("pass") => Some("pass".to_string()),
            Some("FAIL") => Some("fail".to_string()),
            Some("skip") => Some("skipped".to_string()),
            _ => None,
        })
        .collect();
    assert_eq!(from_json, from_text);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sugawara");
    let ok = Command::new(bin).args(["verify", "centrality", "--M", "0", "--n", "1", "--z", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    let bad = Command::new(bin).args(["verify", "phi", "--m", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let dir = std::env::temp_dir().join(format!("sugawara-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("phi.json");
    let out = Command::new(bin)
        .args(["compute", "phi", "--M", "3", "--n", "0", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["M"], 3);
    std::fs::remove_dir_all(&dir).ok();
}
