//! End-to-end runs of the `uamo` binary: outputs, manifests, determinism and
//! exit codes.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn uamo(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uamo"))
        .current_dir(dir)
        .env_remove("UAMO_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|_| panic!("stderr is not JSON: {text}"))
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn butterfly_happy_path_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = uamo(dir.path(), &["butterfly", "--lambda1", "0.7", "--lambda2", "0.7", "--qmax", "6", "--out", "bf.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "bf.csv");
    assert!(csv.starts_with("p,q,phi,arc_lo,arc_hi\n"));
    assert!(csv.lines().count() > 12);
    let manifest: Value = serde_json::from_str(&read(dir.path(), "bf.manifest.json")).unwrap();
    assert_eq!(manifest["command"], "butterfly");
    assert_eq!(manifest["parameters"]["qmax"], 6);
    assert_eq!(manifest["parameters"]["phases"], 8);
    assert_eq!(manifest["parameters"]["lambda1"], 0.7);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["dynamics", "--lambda1", "0.9", "--lambda2", "0.6", "--phi", "golden", "--steps", "200"];
    assert!(uamo(dir.path(), &args).status.success());
    let first = read(dir.path(), "dynamics.csv");
    let first_manifest = read(dir.path(), "dynamics.manifest.json");
    assert!(uamo(dir.path(), &args).status.success());
    assert_eq!(first, read(dir.path(), "dynamics.csv"));
    assert_eq!(first_manifest, read(dir.path(), "dynamics.manifest.json"));
    assert_eq!(first.lines().count(), 202);
}

#[test]
fn zero_steps_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = uamo(dir.path(), &["dynamics", "--lambda1", "1", "--lambda2", "0.9999", "--phi", "golden", "--steps", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["code"], 2);
    assert!(err["message"].as_str().unwrap().contains("steps"));
    assert!(!dir.path().join("dynamics.csv").exists());
}

#[test]
fn malformed_arguments_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["lyapunov", "--lambda1", "1.5"],
        vec!["lyapunov", "--phi", "3/0"],
        vec!["dynamics", "--bogus", "1"],
        vec!["no-such-command"],
        vec!["lyapunov", "--n", "10"],
        vec!["lyapunov", "--z", "abc"],
    ] {
        let out = uamo(dir.path(), &args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&out)["code"], 2);
    }
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("blocker"), "").unwrap();
    let out = uamo(dir.path(), &["cmv-check", "--half-width", "4", "--out", "blocker/cmv.json"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr_json(&out)["code"], 4);
}

#[test]
fn singular_cocycle_is_a_numerical_error() {
    // θ = 1/4 makes cos 2πθ vanish, so the A cocycle at λ₂ = 1 has a zero
    // denominator at the first step.
    let dir = tempfile::tempdir().unwrap();
    let out = uamo(
        dir.path(),
        &["lyapunov", "--lambda1", "0.5", "--lambda2", "1", "--variant", "A", "--theta", "0.25", "--z", "0.3", "--n", "10000"],
    );
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stderr_json(&out)["code"], 3);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), "lambda1 = 0.4\nlambda2 = 0.3\nhalf-width = 5\nout = \"from_config.json\"\n").unwrap();
    let out = uamo(dir.path(), &["cmv-check", "--config", "run.toml", "--lambda2", "0.8"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: Value = serde_json::from_str(&read(dir.path(), "from_config.manifest.json")).unwrap();
    assert_eq!(manifest["parameters"]["lambda1"], 0.4);
    assert_eq!(manifest["parameters"]["lambda2"], 0.8);
    assert_eq!(manifest["parameters"]["half-width"], 5);
    let pairs: Value = serde_json::from_str(&read(dir.path(), "from_config.json")).unwrap();
    assert_eq!(pairs.as_array().unwrap().len(), 22);

    std::fs::write(dir.path().join("bad.toml"), "lamda1 = 0.4\n").unwrap();
    let out = uamo(dir.path(), &["cmv-check", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    let out = uamo(dir.path(), &["cmv-check", "--config", "missing.toml"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn lyapunov_on_the_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let out = uamo(
        dir.path(),
        &["lyapunov", "--lambda1", "0.5", "--lambda2", "0.70710678", "--phi", "golden", "--n", "200000", "--z", "auto-spectrum", "--z-count", "2"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: Value = serde_json::from_str(&read(dir.path(), "lyapunov.manifest.json")).unwrap();
    let l = manifest["summary"]["L_mean"].as_f64().unwrap();
    assert!((l - 0.4356).abs() < 0.01, "L = {l}");
    assert!(read(dir.path(), "lyapunov.csv").starts_with("z_angle,epsilon,L,stderr\n"));
}

#[test]
fn every_command_runs_at_small_scale() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 6] = [
        &["acceleration", "--n", "10000", "--eps-min", "-0.2", "--eps-max", "0.2", "--eps-count", "9", "--z", "0.5"],
        &["duality", "--phi", "34/55", "--half-width", "20", "--xi-count", "4"],
        &["cocycle-verify", "--samples", "50"],
        &["measure-trend", "--qmax", "13", "--phases", "2"],
        &["walk2d-check", "--l", "10"],
        &["dynamics", "--steps", "50", "--threads", "1"],
    ];
    for args in runs {
        let out = uamo(dir.path(), args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert!(read(dir.path(), "duality.csv").starts_with("xi,residual_max,residual_median,tail_mass\n"));
    assert!(read(dir.path(), "measure_trend.csv").starts_with("q,measure\n"));
    assert!(read(dir.path(), "walk2d.csv").starts_with("angle\n"));
    assert!(read(dir.path(), "acceleration.csv").starts_with("epsilon,L,slope,omega\n"));
    let verify = read(dir.path(), "cocycle_verify.csv");
    assert!(verify.lines().skip(1).all(|l| l.ends_with(",1")), "{verify}");
}

#[test]
fn help_lists_every_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = uamo(dir.path(), &["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["butterfly", "dynamics", "lyapunov", "acceleration", "duality", "cmv-check", "cocycle-verify", "measure-trend", "walk2d-check"] {
        assert!(text.contains(name), "{name} missing from help");
    }
}
