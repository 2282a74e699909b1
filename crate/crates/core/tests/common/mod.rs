#![allow(dead_code)]

use std::path::PathBuf;

use arrangement_core::models::{BuildOptions, FaceData, Model};
use arrangement_core::Strategy;

pub const HYPERPLANE: &[&str] = &[
    "boolean2",
    "generic3",
    "concurrent3",
    "two-points-line",
    "generic4",
    "six-lines",
    "boolean3",
    "simplex3",
    "five-planes",
];
pub const SPHERE: &[&str] = &[
    "two-great-circles",
    "three-meridians",
    "octahedral",
    "four-great-circles",
    "four-points-circle",
];
pub const PERIODIC: &[&str] = &["one-point-circle", "two-points-circle", "torus3", "grid-torus"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

pub fn model(name: &str) -> Model {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    Model::from_json_str(&text).expect("fixture parses")
}

pub fn faces(name: &str) -> FaceData {
    model(name)
        .build(&BuildOptions::default(), Strategy::default())
        .expect("fixture builds")
}

pub fn all() -> Vec<&'static str> {
    HYPERPLANE.iter().chain(SPHERE).chain(PERIODIC).copied().collect()
}

pub fn regular() -> Vec<(&'static str, FaceData)> {
    all()
        .into_iter()
        .map(|n| (n, faces(n)))
        .filter(|(_, fd)| fd.regular)
        .collect()
}

pub fn separated() -> Vec<(&'static str, FaceData)> {
    HYPERPLANE.iter().chain(SPHERE).map(|&n| (n, faces(n))).collect()
}

/// Regular fixtures in which every submanifold separates, plus two points on
/// a circle; the metrical-hemisphere and ψ/ι statements are checked on these.
pub fn structured() -> Vec<(&'static str, FaceData)> {
    let mut v = separated();
    v.push(("two-points-circle", faces("two-points-circle")));
    v
}

pub fn inline(json: &str) -> FaceData {
    Model::from_json_str(json)
        .expect("model parses")
        .build(&BuildOptions::default(), Strategy::default())
        .expect("model builds")
}

pub fn face_named(fd: &FaceData, label: &str) -> usize {
    fd.faces.iter().position(|f| f.label == label).expect("label exists")
}
