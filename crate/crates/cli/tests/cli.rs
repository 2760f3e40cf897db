use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str], config: &str) -> Output {
    let path = dir.join("config.json");
    std::fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_l1delay"))
        .current_dir(dir)
        .args(args)
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn zero_data_solve_writes_zeros() {
    let dir = tmp();
    let out = run(dir.path(), &["solve"], r#"{"alpha":0.5,"N":10,"M":8,"data":"zero"}"#);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("solve.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,t,max_abs,l2_error"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 30);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(&fields[2..], ["0.0000e+00", "0.0000e+00"], "{row}");
    }
    assert!(!text.contains('\r'));
}

#[test]
fn kernel_check_reports_small_residual() {
    let dir = tmp();
    let out = run(
        dir.path(),
        &["check-kernel", "--format", "json", "--output", "k.json"],
        r#"{"kind":"check-kernel","alpha":0.5,"N":2000}"#,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("k.json")).unwrap()).unwrap();
    let residual = doc["summary"]["max_identity_residual"].as_f64().unwrap();
    assert!(residual <= 1e-10, "{residual}");
    assert_eq!(doc["summary"]["decay_violations"], 0);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2000);
    assert_eq!(doc["config"]["kind"], "check-kernel");
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tmp();
    let cases = [
        (vec!["study-time"], "{\n  \"alpha\": 1.2,\n  \"h\": 0.1,\n  \"N\": [10]\n}", "line 2"),
        (vec!["check-kernel"], "{\n  \"alpha\": 0.5,\n  \"N\": 20,\n  \"extra\": 1\n}", "line 4"),
        (vec!["check-kernel"], r#"{"kind":"solve","alpha":0.5,"N":20}"#, "does not match"),
        (vec!["study-time"], r#"{"alpha":0.5,"h":0.1}"#, "`N` is required"),
        (vec!["solve"], "{\"alpha\": 0.5,", "line 1"),
        (vec!["solve", "--threads", "0"], r#"{"alpha":0.5,"N":4,"M":4}"#, "--threads"),
    ];
    for (args, config, needle) in cases {
        let out = run(dir.path(), &args, config);
        assert_eq!(code(&out), 2, "{config}");
        assert!(stderr(&out).contains(needle), "{config}: {}", stderr(&out));
    }
    let out = Command::new(env!("CARGO_BIN_EXE_l1delay"))
        .args(["solve", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_l1delay"))
        .args(["solve", "--bogus-flag"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn blow_up_exits_one_and_names_the_step() {
    let dir = tmp();
    let out = run(dir.path(), &["solve"], r#"{"alpha":0.5,"N":10,"M":8,"p":1e300,"b":1e300}"#);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("at step 1"), "{}", stderr(&out));
}

fn study(dir: &Path, threads: &str, format: &str, name: &str) -> (Output, PathBuf) {
    let out = run(
        dir,
        &["study-time", "--threads", threads, "--format", format, "--output", name],
        r#"{"kind":"study-time","alpha":0.5,"h":0.01,"N":[20,40,80]}"#,
    );
    (out, dir.join(name))
}

#[test]
fn study_output_is_byte_stable() {
    let dir = tmp();
    let (a, pa) = study(dir.path(), "1", "json", "a.json");
    let (b, pb) = study(dir.path(), "3", "json", "b.json");
    assert_eq!((code(&a), code(&b)), (0, 0));
    assert_eq!(std::fs::read(pa).unwrap(), std::fs::read(pb).unwrap());
    let (c, pc) = study(dir.path(), "2", "csv", "c.csv");
    let (d, pd) = study(dir.path(), "2", "csv", "d.csv");
    assert_eq!((code(&c), code(&d)), (0, 0));
    assert_eq!(std::fs::read(pc).unwrap(), std::fs::read(pd).unwrap());
}

#[test]
fn small_temporal_study_table() {
    let dir = tmp();
    let (out, path) = study(dir.path(), "1", "csv", "t.csv");
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("wall time:") && stdout.contains("summary: max error"), "{stdout}");

    let text = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,E_1,rate_1,E_2,rate_2,E_3,rate_3");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("20,") && lines[1].ends_with(','));
    // First interval converges at order alpha.
    let rate: f64 = lines[3].split(',').nth(2).unwrap().parse().unwrap();
    assert!((rate - 0.5).abs() < 0.05, "{rate}");
}

#[test]
fn stdin_config_and_truncation() {
    use std::io::Write;
    use std::process::Stdio;
    let dir = tmp();
    let mut child = Command::new(env!("CARGO_BIN_EXE_l1delay"))
        .current_dir(dir.path())
        .args(["check-truncation", "--config", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"alpha":0.6,"N":100}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("check-truncation.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("n,interval,t,residual,bound,ratio"));
    assert_eq!(text.lines().count(), 301);
}
