use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrangement")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arrangement-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn faces_of_two_points_on_a_circle() {
    let v = json(&["faces", &fixture("two-points-circle")]);
    assert_eq!(v["counts"], serde_json::json!([2, 2]));
    assert_eq!(v["kind"], "periodic");
    assert_eq!(v["separating"], false);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn homology_of_the_torus_complement() {
    let v = json(&["homology", &fixture("torus3")]);
    assert_eq!(v["betti"], serde_json::json!([1, 5, 10]));
    assert_eq!(v["euler_characteristic"], 6);
    let faces = json(&["homology", &fixture("torus3"), "--stage", "faces"]);
    assert_eq!(faces["betti"], serde_json::json!([1, 2, 1]));
}

#[test]
fn salvetti_and_oracle() {
    let v = json(&["salvetti", &fixture("generic3")]);
    assert_eq!(v["grade_counts"], serde_json::json!([7, 18, 12]));
    assert_eq!(v["homology"]["betti"], serde_json::json!([1, 3, 3]));
    let o = json(&["oracle", &fixture("generic3")]);
    assert_eq!(o["agree"], serde_json::json!({"betti": true, "bounded": true, "chambers": true}));
    assert!(json(&["lattice", &fixture("boolean2")])["poset"].is_object());
}

#[test]
fn mh_checks() {
    let v = json(&["mh-check", &fixture("boolean2"), "--stage", "dual"]);
    assert_eq!((v["qmh"].as_bool(), v["lmh"].as_bool(), v["mh"].as_bool()), (Some(true), Some(true), Some(true)));
    let v = json(&["mh-check", "--complex", &fixture("octagon-nomh")]);
    assert_eq!((v["qmh"].as_bool(), v["lmh"].as_bool(), v["mh"].as_bool()), (Some(true), Some(true), Some(false)));
    let v = json(&["mh-check", "--complex", &fixture("octagon-nolmh")]);
    assert_eq!((v["qmh"].as_bool(), v["lmh"].as_bool(), v["mh"].as_bool()), (Some(true), Some(false), Some(false)));
}

#[test]
fn fundamental_group_and_cover() {
    let v = json(&["pi1", &fixture("one-point-circle")]);
    assert_eq!(v["abelianization"]["rank"], 2);
    assert_eq!(v["relators"], serde_json::json!([]));
    let perms = scratch("perms.json");
    std::fs::write(&perms, r#"{"sheets":2,"perms":[[2,1],[1,2]]}"#).unwrap();
    let c = json(&["cover", &fixture("one-point-circle"), "--perms", perms.to_str().unwrap()]);
    assert_eq!(c["cell_counts"], serde_json::json!([2, 4, 0]));
    assert_eq!(c["euler_characteristic"], -2);
    assert_eq!(c["components"], 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["salvetti", "generic3"],
        vec!["pi1", "boolean2"],
        vec!["faces", "grid-torus"],
    ] {
        let f = fixture(args[1]);
        let a = run(&[args[0], &f]);
        let b = run(&[args[0], &f, "--sequential"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, run(&[args[0], &f]).stdout);
    }
}

#[test]
fn out_and_dot_files() {
    let out = scratch("faces.json");
    let dot = scratch("faces.dot");
    let r = run(&["faces", &fixture("boolean2"), "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert!(r.status.success());
    assert!(r.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["counts"], serde_json::json!([1, 4, 4]));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    let missing = run(&["faces", "/nonexistent/model.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad = scratch("bad-perms.json");
    std::fs::write(&bad, r#"{"sheets":2,"perms":[[1,1],[1,2]]}"#).unwrap();
    let r = run(&["cover", &fixture("one-point-circle"), "--perms", bad.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    assert_eq!(error_kind(&r), "input");

    let r = run(&["oracle", &fixture("torus3")]);
    assert_eq!(r.status.code(), Some(3));
    assert_eq!(error_kind(&r), "restriction");
    let r = run(&["mh-check", &fixture("one-point-circle"), "--stage", "dual"]);
    assert_eq!(r.status.code(), Some(3));

    let r = run(&["faces", &fixture("torus3"), "--window", "0:1"]);
    assert_eq!(r.status.code(), Some(4));
    assert_eq!(error_kind(&r), "consistency");

    assert_eq!(run(&["faces", &fixture("torus3"), "--window", "1:2"]).status.code(), Some(2));
    assert_eq!(run(&["faces", &fixture("six-lines"), "--max-hyperplanes", "3"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}
