//! End-to-end tests against the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qspectral")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(bin())
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn write_fixture(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qspectral-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const DIAG_I_1PJ: &str = r#"{"n": 2, "entries": [[[0,1,0,0],[0,0,0,0]],[[0,0,0,0],[1,0,1,0]]]}"#;

#[test]
fn spectrum_reports_circular_points_and_radius() {
    let dir = temp_dir("spectrum");
    let input = write_fixture(&dir, "m.json", DIAG_I_1PJ);
    let out = run(&["spectrum", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());

    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let points = v["spectrum"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert!((points[0]["re"].as_f64().unwrap()).abs() < 1e-10);
    assert!((points[0]["im"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(points[0]["mult"], 1);
    assert_eq!(points[0]["kind"], "point");
    assert!((points[1]["re"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((points[1]["im"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((v["radius"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-10);
}

#[test]
fn synth_round_trips_through_spectrum() {
    let dir = temp_dir("synth");
    let synth_in = write_fixture(
        &dir,
        "synth.json",
        r#"{"basis": [[[1,0,0,0]]], "lambdas": [[0,0,1,0]]}"#,
    );
    let matrix_out = dir.join("matrix.json");
    let out = run(&[
        "synth",
        "--input",
        synth_in.to_str().unwrap(),
        "--output",
        matrix_out.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // the synthesized operator is left multiplication by j
    let text = std::fs::read_to_string(&matrix_out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n"], 1);
    let entry = v["entries"][0][0].as_array().unwrap();
    let comps: Vec<f64> = entry.iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(comps, vec![0.0, 0.0, 1.0, 0.0]);

    // and its spectrum is the whole sphere class
    let out = run(&["spectrum", "--input", matrix_out.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let p = &v["spectrum"][0];
    assert!((p["re"].as_f64().unwrap()).abs() < 1e-12);
    assert!((p["im"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(p["mult"], 1);
}

#[test]
fn decompose_reconstructs_the_input() {
    let dir = temp_dir("decompose");
    let input = write_fixture(&dir, "m.json", DIAG_I_1PJ);
    let out = run(&["decompose", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);
    assert_eq!(v["lambdas"].as_array().unwrap().len(), 2);
    assert_eq!(v["iota"].as_array().unwrap()[1], 1.0);
    // A+JB blocks present
    assert!(v["ajb"]["a"]["n"].as_i64().unwrap() == 2);
    // canonical eigenvalues stay in the upper half slice
    for l in v["canonical"]["lambdas"].as_array().unwrap() {
        assert!(l.as_array().unwrap()[1].as_f64().unwrap() >= -1e-12);
    }
}

#[test]
fn verify_is_deterministic_and_green_on_random_normals() {
    let a = run(&["verify", "--random", "6", "--count", "25", "--seed", "7"]);
    let b = run(&["verify", "--random", "6", "--count", "25", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn verify_accepts_a_normal_input_matrix() {
    let dir = temp_dir("verify-matrix");
    let input = write_fixture(&dir, "m.json", DIAG_I_1PJ);
    let out = run(&["verify", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "PASS", "check {} failed", c["name"]);
    }
}

#[test]
fn verify_fails_with_exit_2_on_non_normal_input() {
    let dir = temp_dir("verify-fail");
    let input = write_fixture(
        &dir,
        "jordan.json",
        r#"{"n": 2, "entries": [[[0,0,0,0],[1,0,0,0]],[[0,0,0,0],[0,0,0,0]]]}"#,
    );
    let out = run(&["verify", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let has_fail = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["status"] == "FAIL");
    assert!(has_fail, "exit 2 must come with a FAIL line");
}

#[test]
fn simulate_sweeps_the_harmonic_model() {
    let dir = temp_dir("simulate");
    let input = write_fixture(
        &dir,
        "model.json",
        r#"{"head": null, "tail": {"family": "harmonic", "params": {"c_re": 0.0, "c_im": 1.0}, "slice": [0,1,0,0]}, "N": 100}"#,
    );
    let out = run(&[
        "simulate",
        "--input",
        input.to_str().unwrap(),
        "--levels",
        "10,100",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    assert!((levels[0]["norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((levels[1]["min_modulus"].as_f64().unwrap() - 0.01).abs() < 1e-12);
}

#[test]
fn input_errors_exit_1() {
    // missing file
    let out = run(&["spectrum", "--input", "/nonexistent/nope.json"]);
    assert_eq!(out.status.code(), Some(1));

    // malformed JSON
    let dir = temp_dir("errors");
    let bad = write_fixture(&dir, "bad.json", "{not json");
    let out = run(&["spectrum", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    // unknown command prints usage and exits 1
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    // bad slice
    let good = write_fixture(&dir, "m.json", DIAG_I_1PJ);
    let out = run(&[
        "spectrum",
        "--input",
        good.to_str().unwrap(),
        "--slice",
        "1,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_env_var_merges_nearby_classes() {
    let dir = temp_dir("tol");
    let input = write_fixture(
        &dir,
        "close.json",
        r#"{"n": 2, "entries": [[[1,0,0,0],[0,0,0,0]],[[0,0,0,0],[1.2,0,0,0]]]}"#,
    );
    // default tolerance keeps the two classes apart
    let out = run(&["spectrum", "--input", input.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 2);

    // a coarse tolerance from the environment merges them
    let out = run_env(
        &["spectrum", "--input", input.to_str().unwrap()],
        "QSPECTRAL_TOL",
        "0.5",
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let points = v["spectrum"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0]["mult"], 2);

    // the --tol flag wins over the environment
    let out = run_env(
        &[
            "spectrum",
            "--input",
            input.to_str().unwrap(),
            "--tol",
            "1e-9",
        ],
        "QSPECTRAL_TOL",
        "0.5",
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_flags_diagonal_structure() {
    let dir = temp_dir("classify");
    let input = write_fixture(
        &dir,
        "j.json",
        r#"{"n": 2, "entries": [[[0,1,0,0],[0,0,0,0]],[[0,0,0,0],[0,0,1,0]]]}"#,
    );
    let out = run(&["classify", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["anti_self_adjoint"], true);
    assert_eq!(v["unitary"], true);
    assert_eq!(v["normal"], true);
    assert_eq!(v["self_adjoint"], false);
}
