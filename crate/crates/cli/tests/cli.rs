use std::path::Path;

use jmeas::default_catalog;
use jmeas::io::{read_joint, write_joint};
use jmeas_cli::{run, EXIT_GAP, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("jmeas").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_then_verify_every_catalog_entry() {
    let dir = tempfile::tempdir().unwrap();
    for id in default_catalog() {
        let id = id.to_string();
        let file = dir.path().join("povm.json");
        let (code, _, err) = invoke(&["construct", "--config", &id, "--out", path_str(&file)]);
        assert_eq!(code, EXIT_OK, "{id}: {err}");
        let (code, out, err) = invoke(&["verify", path_str(&file)]);
        assert_eq!(code, EXIT_OK, "{id}: {err}");
        assert!(out.contains("\"passed\":true"), "{id}: {out}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["threshold", "--format", "csv"][..],
        &["threshold"],
        &["construct", "--config", "icosahedron6"],
        &["steering-bound", "--config", "mub:d=5"],
    ] {
        let (c1, first, _) = invoke(args);
        let (c2, second, _) = invoke(args);
        assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn scaled_effect_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let joint = "planar:M=3".parse::<jmeas::ConfigId>().unwrap().construct().unwrap();
    let mut tampered = joint.clone();
    let (tuple, effect) = joint.effects().iter().next().unwrap();
    tampered.set(tuple.clone(), effect.scale(1.01)).unwrap();
    std::fs::write(&file, write_joint(&tampered).unwrap()).unwrap();
    let (code, out, _) = invoke(&["verify", path_str(&file)]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.contains("\"normalized\":false"));
}

#[test]
fn malformed_file_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"dim\": 2, \"slots\": [[\"a\"]]}").unwrap();
    let (code, _, err) = invoke(&["verify", path_str(&file)]);
    assert_eq!(code, EXIT_INVALID, "{err}");
}

#[test]
fn specker_classification() {
    let (code, out, _) = invoke(&["specker", "--lambda", "0.66"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"class\":\"specker_4\""), "{out}");
    let (_, out, _) = invoke(&["specker", "--lambda", "0.5"]);
    assert!(out.contains("all_compatible"));
    let (_, out, _) = invoke(&["specker", "--lambda", "0.7"]);
    assert!(out.contains("some_triple_incompatible"));
}

#[test]
fn usage_errors() {
    assert_eq!(invoke(&["construct", "--config", "planar:M=1"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["threshold", "--config", "cube8"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["--psd-tol=-1", "catalog"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
}

#[test]
fn tightness_reports_every_catalog_entry_as_tight() {
    for id in default_catalog() {
        let (code, out, _) = invoke(&["tightness", "--config", &id.to_string()]);
        assert_ne!(code, EXIT_GAP, "{id}: {out}");
        assert_eq!(code, EXIT_OK, "{id}");
    }
}

#[test]
fn marginals_of_file_match_config() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    invoke(&["construct", "--config", "mub:d=3", "--out", path_str(&file)]);
    let from_file = invoke(&["marginals", path_str(&file)]);
    let from_config = invoke(&["marginals", "--config", "mub:d=3"]);
    assert_eq!(from_file.0, EXIT_OK);
    assert_eq!(from_file.1, from_config.1);
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(read_joint(&text).unwrap().num_slots(), 2);
}
