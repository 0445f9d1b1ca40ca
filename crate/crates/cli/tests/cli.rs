use std::fs;
use std::process::Command;

use clap::Parser;
use serde_json::Value;

use barrlab_cli::{run, RunConfig, Status};

fn barrlab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_barrlab"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out) = barrlab(&all);
    (code, serde_json::from_str(&out).expect("json report"))
}

fn config(args: &[&str]) -> RunConfig {
    RunConfig::try_parse_from(std::iter::once("barrlab").chain(args.iter().copied())).expect("valid arguments")
}

#[test]
fn check_monad_maybe_passes() {
    let (code, out) = barrlab(&["check-monad", "maybe", "--max-size", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS  associativity"));
    assert!(out.contains("status: pass"));
}

#[test]
fn gset_laws_pass_and_liftings_differ() {
    let (code, _) = barrlab(&["check-distlaw", "em", "gset-s3-conj", "--max-size", "2"]);
    assert_eq!(code, 0);
    let (code, report) = json_of(&["diff-liftings", "gset-s3"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["liftings_differ"], Value::Bool(true));
    assert!(report["result"]["witness"]["element"].is_string());
}

#[test]
fn density_example() {
    let (code, report) = json_of(&["density", "--functor", "moore:z2:1letter", "--depth", "8", "--n", "3", "--samples", "5"]);
    assert_eq!(code, 0, "{report}");
    let checks = &report["checks"][0]["checks"];
    assert_eq!(checks[0]["law"], "p_3(h_3(x)) = p_3(x)");
    assert_eq!(checks[0]["instances"], 5);
    assert_eq!(checks[1]["law"], "distance(h_3(x), x) ≤ 2^-3");
    assert_eq!(report["result"]["bound"], "2^-3");
}

#[test]
fn json_reports_are_reproducible() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let args = ["density", "--n", "2", "--samples", "3", "--seed", "17", "--format", "json"];
    let a = strip(serde_json::to_value(run(&config(&args))).unwrap());
    let b = strip(serde_json::to_value(run(&config(&args))).unwrap());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a["seed"], 17);
    let other = strip(serde_json::to_value(run(&config(&["density", "--n", "2", "--samples", "3", "--seed", "18"]))).unwrap());
    assert_ne!(a["result"], other["result"]);
}

#[test]
fn violation_exits_one_with_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alg.json");
    fs::write(
        &path,
        r#"{"monad": "maybe", "algebra": {"table": {"carrier": 2, "table": [1, 1, 1]}}}"#,
    )
    .unwrap();
    let (code, report) = json_of(&["check-algebra", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(report["status"], "fail");
    let replay = &report["replay"][0];
    assert!(replay["command"].as_str().unwrap().starts_with("check-algebra"));
    assert!(replay["counterexample"]["element"].is_string());
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("aut.json");
    fs::write(&path, r#"{"semiring": "bool", "alphabet": ["a"], "output": [1], "delta": [[0]], "colour": 3}"#).unwrap();
    let (code, report) = json_of(&["behavior", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["kind"], "parse");
    let msg = report["error"]["message"].as_str().unwrap();
    assert!(msg.contains("aut.json") && msg.contains("colour"), "{msg}");

    let (code, report) = json_of(&["density", "--functor", "gset-s3-left", "--n", "1"]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["kind"], "zero_object_violation");

    let (code, _) = barrlab(&["check-monad", "list"]);
    assert_eq!(code, 2);
    let (code, _) = barrlab(&["check-monad", "maybe", "--max-size", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn behavior_distance_and_limit_documents() {
    let dir = tempfile::tempdir().unwrap();
    let aut = dir.path().join("aut.json");
    fs::write(
        &aut,
        r#"{"semiring": "bool", "alphabet": ["a", "b"], "states": ["p", "q"],
            "output": [0, 1], "delta": [["q", "p"], ["q", "q"]]}"#,
    )
    .unwrap();
    let (code, out) = barrlab(&["behavior", aut.to_str().unwrap(), "--depth", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    let series = &report["result"];
    assert_eq!(series["coeffs"]["a"], 1);
    assert_eq!(series["coeffs"]["ba"], 1);
    assert!(series["coeffs"].get("b").is_none());

    let s1 = dir.path().join("s1.json");
    let s2 = dir.path().join("s2.json");
    fs::write(&s1, serde_json::to_string(series).unwrap()).unwrap();
    fs::write(&s2, r#"{"semiring": "bool", "alphabet": ["a", "b"], "bound": 3, "coeffs": {"a": 1}}"#).unwrap();
    let (code, report) = json_of(&["distance", s1.to_str().unwrap(), s2.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["distance"], serde_json::json!({"agree_depth": 2}));

    let (code, report) = json_of(&["anamorphism", aut.to_str().unwrap(), "--depth", "4"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["states"].as_array().unwrap().len(), 2);

    let seq = dir.path().join("seq.json");
    fs::write(
        &seq,
        r#"{"semiring": "z2", "alphabet": ["t"],
            "terms": [{"": 1}, {"": 1, "t": 1}, {"": 1, "t": 1, "tt": 1}, {"": 1, "t": 1, "tt": 1, "ttt": 1}]}"#,
    )
    .unwrap();
    let (code, report) = json_of(&["limit", seq.to_str().unwrap(), "--depth", "3"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["coeffs"], serde_json::json!({"ε": 1, "t": 1, "tt": 1}));
}

#[test]
fn commuting_pairs() {
    let (code, report) = json_of(&["commute", "check", "moore-pair:z2:1letter", "--max-size", "2"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["sigma"]["2"].as_array().unwrap().len(), 8);
    let (code, report) = json_of(&["commute", "search", "swap:s3", "--max-size", "1"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["carriers"][1]["outcome"]["outcome"], "found");
    let (code, report) = json_of(&["commute", "check", "streams:maybe:1"]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["kind"], "not_biproduct_compatible");
}

#[test]
fn words_and_chain() {
    let (code, report) = json_of(&["words", "a,b", "--depth", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["count"], 7);
    assert_eq!(report["result"]["words"][0], "ε");
    assert_eq!(report["result"]["words"][6], "bb");
    let (_, report) = json_of(&["chain", "moore:z2:1letter", "--depth", "4"]);
    assert_eq!(report["result"]["level_sizes"], serde_json::json!(["1", "2", "4", "8", "16"]));
    assert_eq!(report["result"]["free_algebra_on_empty_set"], 1);
    let (code, report) = json_of(&["lemma1", "moore-maybe:1letter", "--depth", "3"]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(run(&config(&["lemma2", "moore:z2:1letter", "--depth", "3"])).status, Status::Pass);
}
