use std::path::PathBuf;

use choiceform::fixtures;
use choiceform::{parse_game, run_cli, CliRun, GameDocument};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", &format!("{name}.game")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (CliRun, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let r = run_cli(std::iter::once("choiceform").chain(args.iter().copied()), &mut out, &mut err);
    (r, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let (r, out, err) = run(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    (r.exit_code, v)
}

#[test]
fn enumerate_prisoners_dilemma() {
    let (code, v) = json(&["enumerate", &fixture("prisoners_dilemma"), "EC"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], 1);
    assert_eq!(v["results"]["equilibria"][0]["labels"], serde_json::json!(["D", "D"]));
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn negative_results_exit_one() {
    let (code, v) = json(&["enumerate", &fixture("matching_pennies"), "EC"]);
    assert_eq!((code, v["results"]["count"].as_u64()), (1, Some(0)));
    let (code, v) = json(&["solve", &fixture("matching_pennies"), "V4", "--derive-aux"]);
    assert_eq!(code, 1);
    assert_eq!(v["outcome"], "negative");
    let (code, _) = json(&["check", &fixture("prisoners_dilemma"), "Nash", "C,C"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0.exit_code, 2);
    let (r, _, err) = run(&["check", &fixture("prisoners_dilemma"), "EC", "C,Z"]);
    assert_eq!(r.exit_code, 2);
    assert!(err.contains("Z"));
    assert_eq!(run(&["check", &fixture("prisoners_dilemma"), "EC", "C"]).0.exit_code, 2);
    assert_eq!(run(&["enumerate", "/nonexistent/game", "EC"]).0.exit_code, 2);
    assert_eq!(run(&["solve", &fixture("all_choice"), "V9"]).0.exit_code, 2);
    assert_eq!(run(&["--tol", "-1", "solve", &fixture("all_choice"), "V4"]).0.exit_code, 2);
    assert_eq!(run(&["--help"]).0.exit_code, 0);
}

#[test]
fn profile_tokens() {
    let pd = fixture("prisoners_dilemma");
    for p in ["D,D", "#1,#1", "1,1"] {
        assert_eq!(json(&["check", &pd, "EC", p]).0, 0, "{p}");
    }
}

#[test]
fn shipped_fixtures_are_current() {
    for f in fixtures::all() {
        let text = std::fs::read_to_string(fixture(f.name)).unwrap();
        assert_eq!(text, f.text(), "{}", f.name);
        let doc = parse_game(&text).unwrap();
        assert!(doc.load().is_ok());
    }
}

#[test]
fn fixtures_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let (r, _, _) = run(&["fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(r.exit_code, 0);
    for f in fixtures::all() {
        assert!(dir.path().join(f.file_name()).exists());
    }
}

#[test]
fn solve_all_fixtures() {
    let (code, v) = json(&["solve", &fixture("prisoners_dilemma"), "V4", "--derive-aux"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["certificate"]["labels"], serde_json::json!(["D", "D"]));
    let (code, _) = json(&["solve", &fixture("example_grid"), "V2"]);
    assert_eq!(code, 1);
    let (code, _) = json(&["--force", "solve", &fixture("example_grid"), "V2"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["solve", &fixture("all_choice"), "V5"]);
    assert_eq!(code, 0);
}

#[test]
fn convert_and_generate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pd.game");
    let (r, _, _) = run(&["convert", &fixture("prisoners_dilemma"), "--to", "choice-form", "--out", out.to_str().unwrap()]);
    assert_eq!(r.exit_code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let doc: GameDocument = parse_game(&text).unwrap();
    assert!(text.contains("choice-form"));
    assert!(doc.load().is_ok());
    let (code, v) = json(&["enumerate", out.to_str().unwrap(), "EC"]);
    assert_eq!((code, v["results"]["count"].as_u64()), (0, Some(1)));

    let gen = dir.path().join("gen.game");
    let (r, _, _) = run(&["--seed", "3", "generate", "--out", gen.to_str().unwrap()]);
    assert_eq!(r.exit_code, 0);
    let (code, _) = json(&["solve", gen.to_str().unwrap(), "V4"]);
    assert_eq!(code, 0);
    let again = dir.path().join("gen2.game");
    run(&["--seed", "3", "generate", "--out", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&gen).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn text_output_lists_fields() {
    let (r, out, _) = run(&["enumerate", &fixture("prisoners_dilemma"), "EC"]);
    assert_eq!(r.exit_code, 0);
    for key in ["command: enumerate", "outcome: success", "count: 1", "wall_time_ms"] {
        assert!(out.contains(key), "{out}");
    }
}
