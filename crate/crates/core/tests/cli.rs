//! The installed binary: exit codes, stable output and figures.

use std::process::Command;

use serde_json::Value;
use widthlab::scenarios::CORPUS_DIR;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_widthlab")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn scene(name: &str) -> String {
    format!("{CORPUS_DIR}/{name}.json")
}

#[test]
fn diam_of_a_scene() {
    let (code, out) = run(&["diam", "--scene", &scene("l1_tetrahedron")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["diam"], "4/1");
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn verdict_exit_codes() {
    let (code, _) = run(&["check-u1", "--norm", r#"{"kind":"l1","dim":3}"#]);
    assert_eq!(code, 0);
    let (code, out) = run(&["check-u1", "--scene", &scene("icosahedron_u1")]);
    assert_eq!(code, 1);
    assert!(out.contains("\"verdict\": \"fails\""));
    let (code, out) = run(&["ball-lemma", "--norm", r#"{"kind":"linf","dim":2}"#, "--x", "1,0", "--y", "-1,0", "--gamma", "2"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn errors_are_json() {
    let (code, out) = run(&["eta", "--norm", r#"{"kind":"l2","dim":2}"#, "--body-json", "[[\"0\",\"0\",\"0\"]]"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "dimension");
    let (code, out) = run(&["circumradius", "--norm", "{\"kind\":\"nope\"}", "--body-json", "[]"]);
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<Value>(&out).is_ok());
}

#[test]
fn output_is_byte_stable() {
    let args = ["report", "--scene", &scene("l1_tetrahedron"), "--oracle"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn renders_planar_and_spatial_figures() {
    let dir = std::env::temp_dir();
    let planar = dir.join("widthlab_cli_segment.svg");
    let (code, _) = run(&["render", "--scene", &scene("l1_segment"), "--out", planar.to_str().unwrap()]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&planar).unwrap();
    assert!(svg.starts_with("<?xml") && svg.contains("class=\"tau\""));
    let spatial = dir.join("widthlab_cli_tetrahedron.svg");
    let (code, _) = run(&[
        "render",
        "--scene",
        &scene("l1_tetrahedron"),
        "--out",
        spatial.to_str().unwrap(),
        "--section",
        "1,1,0;0,0,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&spatial).unwrap().matches("<g>").count(), 4);
}

#[test]
fn tables_for_reports() {
    let (code, out) = run(&["convexity", "--norm", r#"{"kind":"l1","dim":2}"#, "--epsilons", "1,2", "--table"]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().starts_with("epsilon"));
    assert!(out.contains("eps0     2/1"));
}
