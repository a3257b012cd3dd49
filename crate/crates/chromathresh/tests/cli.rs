use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_chromathresh"));
    c.env_remove("CHROMATHRESH_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn sample_is_repeatable_text() {
    let a = run(&["sample", "--n", "6", "--r", "3", "--seed", "42"]);
    let b = run(&["sample", "--n", "6", "--r", "3", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("6 3"));
    assert_eq!(lines.next().unwrap().split_whitespace().count(), 15);
}

#[test]
fn seed_comes_from_the_environment_unless_given() {
    let explicit = run(&["sample", "--n", "7", "--r", "4", "--seed", "99"]).stdout;
    let env = bin().args(["sample", "--n", "7", "--r", "4"]).env("CHROMATHRESH_SEED", "99").output().unwrap().stdout;
    assert_eq!(explicit, env);
    let flag_wins = bin()
        .args(["sample", "--n", "7", "--r", "4", "--seed", "99"])
        .env("CHROMATHRESH_SEED", "5")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(explicit, flag_wins);
    let default = run(&["sample", "--n", "7", "--r", "4"]).stdout;
    assert_eq!(default, run(&["sample", "--n", "7", "--r", "4", "--seed", "0"]).stdout);
}

#[test]
fn moments_example() {
    let v = stdout_json(&["moments", "--n", "4", "--k", "2", "--r", "2"]);
    assert_eq!(v["e_mono"]["exact"], "3/2");
    assert_eq!(v["e_hetero"]["exact"], "3/2");
    assert_eq!(v["q"], "3");
    let v = stdout_json(&["moments", "--kind", "clique", "--n", "100", "--k", "3"]);
    assert_eq!(v["threshold"]["exact"], "1000/1");
    let v = stdout_json(&["moments", "--kind", "tree", "--n", "10", "--k", "3"]);
    assert_eq!(v["threshold"]["exact"], "360/1");
    let v = stdout_json(&["moments", "--n", "5", "--k", "2", "--r", "2"]);
    assert_eq!(v["delta_ratio_bound_mono"]["exact"], "2/5");
    assert_eq!(v["delta_ratio_bound_hetero"]["exact"], "2/5");
    let v = stdout_json(&["moments", "--n", "1000000", "--k", "3", "--r", "1000", "--exact-bits", "16"]);
    assert!(v["e_mono"].get("exact").is_none());
    assert!(v["e_mono"]["log_value"].as_str().unwrap().parse::<f64>().is_ok());
}

#[test]
fn exact_example() {
    let v = stdout_json(&["exact", "--n", "4", "--r", "2", "--property", "mono-matching", "--k", "2"]);
    assert_eq!(v["probability"], "7/8");
    assert_eq!(v["colorings_with_property"], "56");
    assert_eq!(v["expected_count"], "3/2");
    let serial = run(&["exact", "--n", "5", "--r", "2", "--property", "hetero-tree", "--k", "4", "--threads", "1"]);
    let par = run(&["exact", "--n", "5", "--r", "2", "--property", "hetero-tree", "--k", "4", "--threads", "3"]);
    assert_eq!(serial.stdout, par.stdout);
}

#[test]
fn classify_examples() {
    let regime = |args: &[&str]| stdout_json(args)["regime"].as_str().unwrap().to_string();
    assert_eq!(regime(&["classify", "--property", "mono-matching", "--n", "100", "--k", "2", "--r", "10"]), "one");
    assert_eq!(regime(&["classify", "--property", "mono-matching", "--n", "100", "--k", "2", "--r", "1000000000"]), "zero");
    assert_eq!(regime(&["classify", "--property", "hetero-matching", "--n", "100", "--k", "2", "--r", "1"]), "zero");
    let out = run(&["classify", "--property", "mono-clique", "--n", "200", "--k", "3", "--r", "100", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "one\n");
}

#[test]
fn detect_from_file_and_from_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("g.txt");
    let out = run(&["sample", "--n", "8", "--r", "2", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let from_file = stdout_json(&["detect", "--input", path.to_str().unwrap(), "--property", "mono-matching", "--k", "3"]);
    let from_seed = stdout_json(&["detect", "--n", "8", "--r", "2", "--seed", "3", "--property", "mono-matching", "--k", "3"]);
    assert_eq!(from_file, from_seed);
    if from_file["exists"] == true {
        let edges = from_file["witness"]["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 3);
        let c0 = &edges[0][2];
        assert!(edges.iter().all(|e| &e[2] == c0));
    }
    // JSON colorings are accepted too
    let jpath = dir.path().join("g.json");
    let j = run(&["sample", "--n", "8", "--r", "2", "--seed", "3", "--format", "json"]).stdout;
    std::fs::write(&jpath, j).unwrap();
    let from_json = stdout_json(&["detect", "--input", jpath.to_str().unwrap(), "--property", "mono-matching", "--k", "3"]);
    assert_eq!(from_json, from_file);
}

#[test]
fn sweep_multipliers_and_formats() {
    let v = stdout_json(&[
        "sweep", "--property", "mono-matching", "--n", "40", "--k", "2", "--r-multipliers", "0.1,20", "--trials", "50",
        "--no-timing",
    ]);
    let rs: Vec<u64> = v.as_array().unwrap().iter().map(|p| p["r"].as_u64().unwrap()).collect();
    assert_eq!(rs, [27_417, 5_483_400]);
    let csv = run(&["sweep", "--property", "mono-tree", "--point", "9,4,3", "--trials", "20", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("n,k,r,property,trials,successes,p_hat,ci_low,ci_high,seed,regime,elapsed_ms\n"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--n", "4", "--r", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["moments", "--n", "4", "--k", "3", "--r", "2"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--property", "mono-matching", "--n", "100", "--k", "2", "--r", "5", "--c4", "3"]).status.code(), Some(2));
    assert_eq!(run(&["detect", "--input", "/nonexistent/file", "--property", "mono-tree", "--k", "2"]).status.code(), Some(2));
    // enumeration beyond the cap
    let out = run(&["exact", "--n", "7", "--r", "3", "--property", "mono-matching", "--k", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = run(&["detect", "--n", "14", "--r", "5", "--property", "hetero-matching", "--k", "4", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_on_a_small_suite() {
    let out = run(&["verify", "--graphs", "100", "--max-graph-n", "7", "--max-n", "5", "--max-r", "2", "--format", "text"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("ok ")).count(), 3);
}
