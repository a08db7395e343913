//! End-to-end runs of the `homthresh` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homthresh"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homthresh-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn gen_writes_one_graph6_line() {
    let dir = scratch("gen");
    let f3 = dir.join("f3.g6");
    let out = run(&["gen", "andrasfai", "-k", "3", "-l", "3", "--out", f3.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&f3).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert_eq!(text.trim().len(), 1 + 11); // order byte plus ceil(66/6) data bytes
}

#[test]
fn fold_reports_k_and_hom() {
    let dir = scratch("fold");
    let f3 = dir.join("f3.g6");
    run(&["gen", "andrasfai", "-k", "3", "--out", f3.to_str().unwrap()]);
    let out = run(&["fold", "--in", f3.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["k"], 3);
    assert_eq!(v["hom"].as_array().unwrap().len(), 12);
}

#[test]
fn fold_rejects_graphs_that_are_not_maximal() {
    let dir = scratch("premise");
    let c9 = dir.join("c9.g6");
    run(&["gen", "cycle", "-n", "9", "--out", c9.to_str().unwrap()]);
    let out = run(&["fold", "--in", c9.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not maximal"));
}

#[test]
fn lemma_check_flags_the_gadget() {
    let dir = scratch("lemma");
    let g = dir.join("gadget.g6");
    run(&["gen", "gadget", "--out", g.to_str().unwrap()]);
    let out = run(&["check", "lemma", "two-seven-cycles", "--in", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["witness"]["kind"], "induced_pattern");
}

#[test]
fn hom_verify_reads_a_json_map() {
    let dir = scratch("verify");
    let (c4, k2, map) = (dir.join("c4.g6"), dir.join("k2.g6"), dir.join("map.json"));
    run(&["gen", "cycle", "-n", "4", "--out", c4.to_str().unwrap()]);
    run(&["gen", "complete", "-n", "2", "--out", k2.to_str().unwrap()]);
    fs::write(&map, "[0, 1, 0, 1]").unwrap();
    let args = ["hom", "verify", "--in", c4.to_str().unwrap(), "--target", k2.to_str().unwrap(), "--map", map.to_str().unwrap()];
    assert!(run(&args).status.success());
    fs::write(&map, "[0, 0, 1, 1]").unwrap();
    assert_eq!(run(&args).status.code(), Some(1));
}

#[test]
fn optimize_emits_exact_strings() {
    let dir = scratch("opt");
    let g = dir.join("grotzsch.g6");
    run(&["gen", "grotzsch", "--out", g.to_str().unwrap()]);
    let v = json(&run(&["optimize", "--pattern", g.to_str().unwrap()]));
    assert_eq!(v["t"], "10/29");
    assert_eq!(v["tight_vertices"].as_array().unwrap().len(), 11);
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--nmin", "4", "--nmax", "4", "--connected", "--count"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "6");
    let out = run(&["enumerate", "--nmax", "14", "--count"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
}

#[test]
fn campaign_all_writes_a_report() {
    let dir = scratch("campaign");
    let report = dir.join("out.json");
    let out = bin()
        .args(["campaign", "all", "--nmax", "8", "--blowups", "10", "--report", report.to_str().unwrap()])
        .env("HOMTHRESH_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["violations"], 0);
    let names: Vec<&str> = v["campaigns"].as_array().unwrap().iter().map(|c| c["campaign"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 5);
    for c in v["campaigns"].as_array().unwrap() {
        for key in ["config", "instances", "skipped", "findings", "violations", "runtime_ms"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(run(&["campaign", "nonsense"]).status.code(), Some(2));
    assert!(!run(&["frobnicate"]).status.success());
    assert_eq!(run(&["gen", "andrasfai"]).status.code(), Some(2));
}
