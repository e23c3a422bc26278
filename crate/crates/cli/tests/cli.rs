use std::path::Path;
use std::process::{Command, Output};

fn cl13(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cl13"));
    cmd.args(args).env_remove("CL13_OUT_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn algebra_suite_passes() {
    let out = cl13(&["verify", "algebra", "--seed", "7"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["tool"]["name"], "cl13");
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in report["checks"].as_array().unwrap() {
        for key in ["name", "anchor", "status", "residual", "tolerance"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
    }
}

#[test]
fn reduction_report_is_reproducible_and_sourced() {
    let args = ["verify", "reduction", "--seed", "3", "--m", "1.0", "--samples", "8"];
    let a = cl13(&args, &[]);
    let b = cl13(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    let scale = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "reduction.family0.m1.source_scale")
        .expect("source scale check");
    assert!((scale["value"].as_f64().unwrap() - 0.1875).abs() < 1e-12);
    assert_eq!(report["config"]["m_values"], serde_json::json!([1.0]));
    assert!(report["checks"][0].get("elapsed_ms").is_none());
}

#[test]
fn full_run_passes() {
    let out = cl13(&["verify", "all", "--seed", "42", "--samples", "6"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["failed"], 0);
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let out = cl13(&["verify", "algebra", "--tol", "1e-300"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(cl13(&["verify", "bogus"], &[]).status.code(), Some(2));
    assert_eq!(cl13(&["verify", "algebra", "--tol", "-1"], &[]).status.code(), Some(2));
    assert_eq!(cl13(&["verify", "algebra", "--m", "1,x"], &[]).status.code(), Some(2));
    assert_eq!(cl13(&["verify", "reduction", "--grid-steps", "0.01"], &[]).status.code(), Some(2));
    assert_eq!(cl13(&["verify"], &[]).status.code(), Some(2));
    assert_eq!(cl13(&["verify", "--config", "/nonexistent/cfg.json"], &[]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"suite": "subspaces", "seed": 5, "samples": 4}"#).unwrap();
    let out = cl13(&["verify", "--config", cfg.to_str().unwrap(), "--seed", "9"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["config"]["seed"], 9);
    assert_eq!(report["config"]["samples"], 4);
    assert_eq!(report["config"]["suite"], "subspaces");
    std::fs::write(&cfg, r#"{"suite": "subspaces", "sede": 5}"#).unwrap();
    assert_eq!(cl13(&["verify", "--config", cfg.to_str().unwrap()], &[]).status.code(), Some(2));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = cl13(&["verify", "subspaces", "--format", "text"], &[("CL13_OUT_DIR", dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("subspaces-seed0.txt")).unwrap();
    assert!(text.contains("subspaces.sp_dimension") && text.ends_with("0 failed\n"));
    let named = cl13(&["verify", "subspaces", "--out", "r.json"], &[("CL13_OUT_DIR", dir.path())]);
    assert_eq!(named.status.code(), Some(0));
    assert!(dir.path().join("r.json").exists());
}
