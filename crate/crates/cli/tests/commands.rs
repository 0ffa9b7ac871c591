//! The binary end to end: exit codes, schema errors with JSON pointers,
//! save/load round trips and DOT exports.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use decorated::DecoratedMorphism;
use gg_morphism::GGMorphism;
use graph_of_groups::GraphOfGroups;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbifold-folds"));
    cmd.env_remove(cli::SEED_VAR);
    cmd
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orbifold-folds-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn example(name: &str) -> String {
    let o = run(&["decorated", "example", name], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn presentation_of_a_torus_with_cone_points() {
    let o = run(&["orbifold", "present", "--spec", r#"{"orientable":true,"genus":1,"boundary_count":1,"cone_orders":[2,3]}"#], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "⟨a1, b1, t1, s1, s2 | s1^2, s2^3, [a1,b1]s1s2 = t1⟩\n");
}

#[test]
fn malformed_input_reports_a_json_pointer_and_exit_code_2() {
    let o = run(&["orbifold", "present"], r#"{"orientable":true,"genus":0,"boundary_count":1,"cone_orders":[2,"x"]}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/cone_orders/1"), "{}", stderr(&o));
    let dm = example("d2-2-2");
    let mut v: serde_json::Value = serde_json::from_str(&dm).unwrap();
    v["morphism"]["edges"][0]["o"] = serde_json::json!("oops");
    let o = run(&["decorated", "check"], &v.to_string());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/morphism/edges/0/o"), "{}", stderr(&o));
    let o = run(&["gog", "check"], "{not json");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(run(&["scenario", "no-such-scenario"], "").status.code(), Some(2));
    assert_eq!(run(&["fold", "apply", "--move", "sideways"], "").status.code(), Some(2));
    let m = serde_json::to_string(&serde_json::from_str::<DecoratedMorphism>(&example("d2-2-2")).unwrap().morphism).unwrap();
    let o = run(&["fold", "apply", "--move", "a1", "--edge", "no-such-edge", "--n", "1"], &m);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn saved_objects_load_back_unchanged() {
    let text = example("cyclic-cover");
    let dm: DecoratedMorphism = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&dm).unwrap() + "\n", text);
    let m_text = serde_json::to_string(&dm.morphism).unwrap();
    let back: GGMorphism = serde_json::from_str(&m_text).unwrap();
    assert_eq!(back, dm.morphism);
    let g_text = serde_json::to_string(&dm.morphism.source).unwrap();
    let back: GraphOfGroups = serde_json::from_str(&g_text).unwrap();
    assert_eq!(back, dm.morphism.source);
}

#[test]
fn dot_exports_list_every_node() {
    let dm: DecoratedMorphism = serde_json::from_str(&example("d2-2-2")).unwrap();
    let src = serde_json::to_string(&dm.morphism.source).unwrap();
    let o = run(&["gog", "dot"], &src);
    let dot = stdout(&o);
    let nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count();
    assert_eq!(nodes, dm.source().graph().vertex_count());
    let o = run(&["decorated", "local-graph", "--format", "dot"], &example("d2-2-2"));
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), dm.source().graph().star(dm.base).len());
    assert!(dot.contains("\"f3\" -> \"f2\" [label=\"(2, 1)\"]"));
}

#[test]
fn fold_check_and_apply_round() {
    let dm: DecoratedMorphism = serde_json::from_str(&example("d2-2-2")).unwrap();
    let m = serde_json::to_string(&dm.morphism).unwrap();
    // f1 and f3 have the same image and o-element up to the target: not folded.
    let o = run(&["fold", "check"], &m);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "NotFolded");
    assert!(!report["f1"].as_array().unwrap().is_empty());
    let o = run(&["fold", "apply", "--move", "fold", "--trace"], &m);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let trace: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let steps: Vec<&str> = trace["steps"].as_array().unwrap().iter().map(|s| s["step"].as_str().unwrap()).collect();
    assert_eq!(steps.last(), Some(&"IIIA"));
    let folded: GGMorphism = serde_json::from_value(trace["morphism"].clone()).unwrap();
    assert_eq!(folded.source.graph().edge_count() + 2, dm.morphism.source.graph().edge_count());
}

#[test]
fn nielsen_search_from_files() {
    let a = temp_file("a.json", r#"{"group":{"orders":[2,0]},"entries":[[[0,1],[1,1]],[[1,1]]]}"#);
    let b = temp_file("b.json", r#"{"group":{"orders":[2,0]},"entries":[[[0,1]],[[1,1]]]}"#);
    let o = run(&["nielsen", "search", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap(), "--max-norm", "6"], "");
    assert_eq!(o.status.code(), Some(0));
    let out: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["verdict"], "equivalent");
    assert_eq!(out["trace"][1], serde_json::json!({"move": "T3", "i": 0, "j": 1}));
    let c = temp_file("c.json", r#"{"group":{"orders":[2,0]},"entries":[[[0,1]],[[0,1]]]}"#);
    let o = run(&["nielsen", "search", "--a", c.to_str().unwrap(), "--b", b.to_str().unwrap(), "--max-norm", "6"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn decorated_commands_report_verdicts() {
    let d = example("d2-2-2");
    assert_eq!(run(&["decorated", "check"], &d).status.code(), Some(0));
    assert_eq!(run(&["decorated", "tame"], &d).status.code(), Some(0));
    let o = run(&["decorated", "extract-cover"], &d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"condition\": \"a\""));
    let planted = example("d2-2-2-planted");
    assert_eq!(run(&["decorated", "tame"], &planted).status.code(), Some(1));
    let cover = example("cyclic-cover");
    let o = run(&["decorated", "extract-cover"], &cover);
    assert_eq!(o.status.code(), Some(0));
    let desc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(desc["degree"], 2);
    // d = 3 = k_u + 1: nothing to adjoin.
    assert_eq!(run(&["decorated", "adjoin-unfold"], &cover).status.code(), Some(1));
    let o = bin().args(["decorated", "example", "cyclic-cover", "--d", "1"]).output().unwrap();
    let o = run(&["decorated", "adjoin-unfold"], &stdout(&o));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn output_goes_to_the_out_file() {
    let out = std::env::temp_dir().join(format!("orbifold-folds-out-{}.txt", std::process::id()));
    let o = bin().args(["scenario", "nielsen-z2-z", "--out", out.to_str().unwrap()]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("scenario nielsen-z2-z\n"));
    assert!(text.ends_with("assertions passed\n"));
}

#[test]
fn seed_variable_changes_randomized_reports_only() {
    let with = |seed: &str| bin().env(cli::SEED_VAR, seed).args(["scenario", "fold-commutes-a2"]).output().unwrap();
    let (a, b) = (with("1"), with("2"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().contains("seed 1\n"));
    let o = bin().env(cli::SEED_VAR, "not-a-number").args(["scenario", "fold-commutes-a2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
