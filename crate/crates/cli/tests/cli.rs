//! Black-box tests of the command-line front end.

use std::path::PathBuf;

use bsforge::output::poly_from_json;
use bsforge::{EXIT_COMPUTATION, EXIT_INPUT, EXIT_OK, EXIT_VALIDATION};
use bsforge_core::arith::parse_mpoly;
use serde_json::Value;

struct Run {
    exit: i32,
    stdout: String,
    stderr: String,
}

fn bsforge(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bsforge").chain(args.iter().copied());
    let exit = bsforge::run(argv, &mut out, &mut err);
    Run { exit, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bsforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const CONIC: [&str; 8] = ["--n", "1", "--poly", "t^2+1", "--alpha", "3", "--seed", "5"];

#[test]
fn text_and_json_encode_the_same_equations() {
    let json_run = bsforge(&[&["equations"][..], &CONIC, &["--format", "json"]].concat());
    assert_eq!(json_run.exit, EXIT_OK, "{}", json_run.stderr);
    let v: Value = serde_json::from_str(&json_run.stdout).unwrap();
    let from_json: Vec<_> =
        v["smooth_equations"].as_array().unwrap().iter().map(|p| poly_from_json(p, 3).unwrap()).collect();
    let text_run = bsforge(&[&["equations"][..], &CONIC, &["--format", "text"]].concat());
    assert_eq!(text_run.exit, EXIT_OK);
    let from_text: Vec<_> = text_run.stdout.lines().map(|l| parse_mpoly(l, "w", 3).unwrap()).collect();
    assert!(!from_json.is_empty());
    assert_eq!(from_json, from_text);
}

#[test]
fn json_schema_has_the_fixed_keys() {
    let r = bsforge(&[&["equations"][..], &CONIC].concat());
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    let mut expected = vec![
        "alpha",
        "certificates",
        "field",
        "m",
        "monomials",
        "n",
        "singular_model",
        "smooth_equations",
        "validation",
    ];
    expected.sort_unstable();
    assert_eq!(keys, expected);
    assert_eq!(v["alpha"], "3/1");
    assert_eq!(v["certificates"]["nontrivial"], true);
}

#[test]
fn output_is_deterministic() {
    let args = [&["equations"][..], &["--n", "2", "--poly", "t^3-3t+1", "--alpha", "2", "--samples", "10"]].concat();
    let a = bsforge(&args);
    let b = bsforge(&args);
    assert_eq!(a.exit, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let cfg = temp_file("conic.toml", "n = 1\npoly = \"t^2+1\"\nalpha = \"3\"\nseed = 5\nformat = \"text\"\n");
    let cfg = cfg.to_str().unwrap();
    let from_file = bsforge(&["--config", cfg, "equations"]);
    assert_eq!(from_file.exit, EXIT_OK, "{}", from_file.stderr);
    let from_flags = bsforge(&[&["equations"][..], &CONIC, &["--format", "text"]].concat());
    assert_eq!(from_file.stdout, from_flags.stdout);
    let overridden = bsforge(&["--config", cfg, "--format", "json", "equations", "--alpha", "7"]);
    let v: Value = serde_json::from_str(&overridden.stdout).unwrap();
    assert_eq!(v["alpha"], "7/1");
}

#[test]
fn unknown_config_keys_are_rejected() {
    let cfg = temp_file("bad.toml", "colour = \"red\"\n");
    let r = bsforge(&["--config", cfg.to_str().unwrap(), "veronese", "--n", "1"]);
    assert_eq!(r.exit, EXIT_INPUT);
    assert!(r.stderr.starts_with("error["), "{}", r.stderr);
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        &["equations", "--n", "1", "--alpha", "3"][..],
        &["equations", "--n", "1", "--poly", "t^2+1", "--alpha", "0"],
        &["certify", "--poly", "t^2+", "--alpha", "2"],
        &["iota", "--n", "1", "--matrix", "[[1,2],[2,4]]"],
        &["frobnicate"],
    ] {
        let r = bsforge(args);
        assert_eq!(r.exit, EXIT_INPUT, "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty());
        assert!(r.stderr.starts_with("error["), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn non_galois_field_is_a_computation_failure() {
    let r = bsforge(&["certify", "--poly", "t^3-2", "--alpha", "2"]);
    assert_eq!(r.exit, EXIT_COMPUTATION);
    assert!(r.stderr.starts_with("error[not_galois]"), "{}", r.stderr);
}

#[test]
fn help_succeeds() {
    let r = bsforge(&["--help"]);
    assert_eq!(r.exit, EXIT_OK);
    assert!(r.stdout.contains("equations"));
}

#[test]
fn veronese_conic_in_text() {
    let r = bsforge(&["--format", "text", "veronese", "--n", "1"]);
    assert_eq!((r.exit, r.stdout.as_str()), (EXIT_OK, "w0*w2 - w1^2\n"));
}

#[test]
fn tampered_reference_data_fails_the_matching_item() {
    let original = bsforge_core::golden::EMBEDDED;
    let tampered = original.replacen("\"discriminant\": \"81\"", "\"discriminant\": \"82\"", 1);
    assert_ne!(tampered, original);
    let path = temp_file("tampered.json", &tampered);
    let r = bsforge(&["--format", "text", "selftest", "--golden", path.to_str().unwrap()]);
    assert_eq!(r.exit, EXIT_VALIDATION);
    assert!(r.stdout.contains("FAIL discriminant: expected 82, computed 81"), "{}", r.stdout);
    assert!(r.stdout.contains("PASS mobius"));
}
