//! End-to-end checks of the command-line interface: subcommands, file
//! outputs, and exit codes.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wristsim")
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wristsim_cli_{tag}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn simulate_writes_csv_and_summary() {
    let dir = workdir("sim");
    let cfg = dir.join("s.json");
    write(&cfg, r#"{"schema_version":1,"duration":2.0}"#);
    let out = Command::new(bin())
        .args(["simulate"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("s.csv").exists());
    let summary = std::fs::read_to_string(dir.join("s.json")).unwrap();
    assert!(summary.contains("\"rmse\""));
    assert!(summary.contains("\"config_hash\""));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_format_emits_full_record() {
    let dir = workdir("json");
    let cfg = dir.join("s.json");
    write(&cfg, r#"{"schema_version":1,"duration":0.5}"#);
    let out = Command::new(bin())
        .args(["simulate"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&dir)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("s.json")).unwrap();
    assert!(text.contains("\"log\""));
    assert!(text.contains("\"sigma\""));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_errors_exit_2() {
    let dir = workdir("cfg");
    let cfg = dir.join("bad.json");
    write(&cfg, r#"{"schema_version":1,"unknown_field":true}"#);
    let out = Command::new(bin())
        .args(["simulate"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let missing = Command::new(bin())
        .args(["simulate", "/nonexistent/nope.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn diverged_simulation_exits_3() {
    let dir = workdir("div");
    let cfg = dir.join("s.json");
    // a 1e9 stiffness factor makes the fixed-step loop blow up
    write(
        &cfg,
        r#"{"schema_version":1,"duration":1.0,"perturbation":{"inertia_factor":1.0,"stiffness_factor":1e9,"damping_factor":1.0}}"#,
    );
    let out = Command::new(bin())
        .args(["simulate"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn seed_flag_overrides_scenario_seed() {
    let dir = workdir("seed");
    let cfg = dir.join("s.json");
    write(&cfg, r#"{"schema_version":1,"duration":0.5,"seed":1}"#);
    let out = Command::new(bin())
        .args(["simulate"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&dir)
        .args(["--seed", "99"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let summary = std::fs::read_to_string(dir.join("s.json")).unwrap();
    assert!(summary.contains("\"seed\": 99"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn tune_emits_report_with_monotone_history() {
    let dir = workdir("tune");
    let cfg = dir.join("t.json");
    write(
        &cfg,
        r#"{
            "schema_version": 1,
            "controller": "smc",
            "scenario": {"schema_version": 1, "duration": 3.0},
            "particles": 6,
            "iterations": 4,
            "seed": 5
        }"#,
    );
    let out = Command::new(bin())
        .args(["tune"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("t_tuning.json")).unwrap()).unwrap();
    let history: Vec<f64> = report["result"]["history"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(history.len(), 5);
    assert!(history.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(report["result"]["best_gains"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compare_prints_table_with_reference_block() {
    let dir = workdir("cmp");
    let cfg = dir.join("c.json");
    write(
        &cfg,
        r#"{
            "schema_version": 1,
            "scenarios": [
                {"schema_version": 1, "duration": 2.0, "controller": {"kind": "smc"}},
                {"schema_version": 1, "duration": 2.0, "controller": {"kind": "pid"}}
            ]
        }"#,
    );
    let out = Command::new(bin())
        .args(["compare"])
        .arg(&cfg)
        .args(["--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("rmse_rad"));
    assert!(stdout.contains("smc#0"));
    assert!(stdout.contains("pid#1"));
    // static reference block with the published comparison constants
    for v in [
        "0.029", "0.266", "0.016", "3.180", "5.740", "1.900", "0.014", "1.210", "0.003",
    ] {
        assert!(stdout.contains(v), "missing reference constant {v}");
    }
    assert!(stdout.contains("not reproduced"));
    assert!(dir.join("c_compare.json").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compare_mismatched_durations_exit_2() {
    let dir = workdir("cmp2");
    let cfg = dir.join("c.json");
    write(
        &cfg,
        r#"{
            "schema_version": 1,
            "scenarios": [
                {"schema_version": 1, "duration": 2.0},
                {"schema_version": 1, "duration": 3.0}
            ]
        }"#,
    );
    let out = Command::new(bin())
        .args(["compare"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_runs_each_value() {
    let dir = workdir("sweep");
    let cfg = dir.join("s.json");
    write(&cfg, r#"{"schema_version":1,"duration":2.0}"#);
    let out = Command::new(bin())
        .args(["sweep"])
        .arg(&cfg)
        .args([
            "--param",
            "stiffness_factor",
            "--values",
            "0.7,1.0,1.3",
            "--out",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.matches("stiffness_factor =").count(), 3);
    assert!(dir.join("s_stiffness_factor_0.7.csv").exists());
    std::fs::remove_dir_all(&dir).ok();

    let unknown = Command::new(bin())
        .args(["sweep"])
        .arg(&cfg)
        .args(["--param", "bogus", "--values", "1.0"])
        .output()
        .unwrap();
    assert_eq!(unknown.status.code(), Some(2));
}
