use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qmodel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmodel")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qmodel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_cycle_suite_passes() {
    let o = qmodel(&["verify", "lemma-8.1", "--N", "3", "--trials", "200", "--seed", "42", "--field", "fp:7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["passed"], true);
    assert_eq!(r["cases"][0]["trials"], 200);
}

#[test]
fn check_reports_a2_not_self_injective() {
    let o = qmodel(&["check", "--fixture", "A2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["selfinj"], false);
}

#[test]
fn check_cycle_nakayama() {
    let r = json(&qmodel(&["check", "--fixture", "C3", "--field", "fp:5"]));
    assert_eq!(r["selfinj"], true);
    assert_eq!(r["nakayama"]["0"], "2");
    assert_eq!(r["nakayama"]["1"], "0");
}

#[test]
fn classify_zero_representation() {
    let rep = write_tmp("zero.json", r#"{"field":"q","ground":"dual","spaces":{"0":0},"arrow_maps":{},"ground_action":{}}"#);
    let o = qmodel(&["classify", "--fixture", "C1", "--rep", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["e"], true);
    for pair in ["projective-all", "all-injective"] {
        for key in ["phi", "psi", "w"] {
            assert_eq!(r["pairs"][pair][key], true, "{pair} {key}");
        }
    }
}

#[test]
fn classify_simple_is_outside_e() {
    let rep = write_tmp(
        "simple.json",
        r#"{"field":"q","ground":"k","spaces":{"0":1},"arrow_maps":{"d0":[["0"]]},"ground_action":{}}"#,
    );
    let o = qmodel(&["classify", "--fixture", "C1", "--rep", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["e"], false);
    assert_eq!(r["pairs"]["projective-all"]["w"], false);
}

#[test]
fn functor_of_simple_on_c1() {
    let rep = write_tmp(
        "simple-f.json",
        r#"{"field":"fp:7","ground":"k","spaces":{"0":1},"arrow_maps":{"d0":[["0"]]},"ground_action":{}}"#,
    );
    let o = qmodel(&["functor", "--fixture", "C1", "--rep", rep.to_str().unwrap(), "--vertex", "0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    for key in ["C", "K", "L1C", "R1K", "L2C", "R2K"] {
        assert_eq!(r[key]["dim"], 1, "{key}");
    }
}

#[test]
fn resolve_window_simple() {
    let o = qmodel(&["resolve", "--fixture", "Z6", "--field", "fp:101", "--vertex", "(3,1)", "--depth", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    let mut p1: Vec<String> =
        r["terms"][1]["generators"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    p1.sort();
    assert_eq!(p1, ["(2,0)", "(3,2)"]);
    assert_eq!(r["terms"][2]["generators"][0], "(2,1)");
}

#[test]
fn tower_runs_on_c1() {
    let o = qmodel(&["tower", "--fixture", "C1", "--ground", "dual", "--depth", "5", "--format", "table"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("passed"));
}

#[test]
fn non_composable_relation_exits_2() {
    let q = write_tmp(
        "bad-quiver.json",
        r#"{"vertices":["0","1"],"arrows":[{"name":"a","from":"0","to":"1"}],"relations":[[{"coef":"1","path":["a","a"]}]]}"#,
    );
    let o = qmodel(&["check", "--quiver", q.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("relations[0][0].path"));
}

#[test]
fn non_equivariant_rep_exits_2() {
    let rep = write_tmp(
        "bad-rep.json",
        r#"{"field":"q","ground":"dual","spaces":{"0":2},"arrow_maps":{"d0":[["1","0"],["0","0"]]},
            "ground_action":{"0":{"eps":[["0","0"],["1","0"]]}}}"#,
    );
    let o = qmodel(&["classify", "--fixture", "C1", "--rep", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`eps`"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&qmodel(&["verify", "no-such-suite"])), 2);
    assert_eq!(code(&qmodel(&["check", "--fixture", "B7"])), 2);
    assert_eq!(code(&qmodel(&["check", "--fixture", "C1", "--field", "fp:8"])), 2);
    assert_eq!(code(&qmodel(&["frobnicate"])), 2);
}

#[test]
fn preconditions_exit_3() {
    assert_eq!(code(&qmodel(&["verify", "lemma-1.6", "--fixture", "A2"])), 3);
    assert_eq!(code(&qmodel(&["tower", "--fixture", "A2"])), 3);
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "prop-4.2", "--trials", "30", "--seed", "7"];
    let a = qmodel(&args);
    let b = qmodel(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let c = qmodel(&seq);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}
