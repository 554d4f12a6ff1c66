use std::fs;
use std::path::PathBuf;
use std::process::Command;

use advlab::lab::{run, ExperimentConfig, ExperimentKind, REPORT_SCHEMA};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("advlab-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn quick(kind: ExperimentKind, seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::defaults(kind);
    cfg.set("trials", "500").unwrap();
    cfg.set("seed", &seed.to_string()).unwrap();
    cfg
}

#[test]
fn same_seed_same_report() {
    let cfg = quick(ExperimentKind::PartialAdaptive, 5);
    let a = run(&cfg).unwrap().to_text();
    let b = run(&cfg).unwrap().to_text();
    assert_eq!(a, b);
    assert!(a.contains(REPORT_SCHEMA));
    let c = run(&quick(ExperimentKind::PartialAdaptive, 6)).unwrap().to_text();
    assert_ne!(a, c);
}

#[test]
fn config_file_then_overrides() {
    let path = scratch("partial.cfg");
    fs::write(&path, "# quick run\ntrials = 300\nseed = 9\n").unwrap();
    let mut cfg = ExperimentConfig::from_text(ExperimentKind::PartialAdaptive, &fs::read_to_string(&path).unwrap())
        .unwrap();
    assert_eq!(cfg.trials, 300);
    cfg.set("seed", "10").unwrap();
    assert_eq!(cfg.seed, 10);
    assert!(cfg.set("no_such_key", "1").is_err());
}

#[test]
fn cli_writes_report_and_log() {
    let out = scratch("partial.report");
    let status = Command::new(env!("CARGO_BIN_EXE_advlab"))
        .args(["partial-adaptive", "--trials", "500", "--seed", "2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("experiment = partial-adaptive"));
    assert!(!text.contains("wall_clock"));
    let mut log = out.clone().into_os_string();
    log.push(".log");
    assert!(fs::metadata(PathBuf::from(log)).is_ok());
}

#[test]
fn cli_reports_bad_input() {
    let status = Command::new(env!("CARGO_BIN_EXE_advlab"))
        .args(["partial-adaptive", "--set", "eta"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let status = Command::new(env!("CARGO_BIN_EXE_advlab"))
        .args(["counterexample", "--eta", "3/2"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn cli_exit_code_tracks_checks() {
    let output = Command::new(env!("CARGO_BIN_EXE_advlab"))
        .args(["degree-lb", "--trials", "200", "--m", "7", "--set", "tau=6"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("experiment = degree-lb"));
    assert!(String::from_utf8(output.stderr).unwrap().contains("FAIL adaptive_accept"));
}
