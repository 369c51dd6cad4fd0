use std::fs;
use std::process::{Command, Output};

fn bin(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forest-ends")).args(args).current_dir(dir).output().expect("binary runs")
}

#[test]
fn generate_then_analyze() {
    let d = tempfile::tempdir().unwrap();
    let o = bin(
        &["generate", "--model", "drainage", "--p", "1", "--width", "12", "--height", "12", "--out", "g.txt"],
        d.path(),
    );
    assert!(o.status.success());
    let o = bin(&["analyze", "g.txt", "--forest", "--inner", "3", "--outer", "5"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    // n1, n2, n3plus
    assert_eq!((row[8], row[9], row[10]), ("0", "6", "0"));
}

#[test]
fn contour_is_not_a_forest() {
    let d = tempfile::tempdir().unwrap();
    bin(&["generate", "--model", "contour", "--width", "6", "--height", "6", "--out", "c.txt"], d.path());
    assert_eq!(bin(&["analyze", "c.txt"], d.path()).status.code(), Some(0));
    assert_eq!(bin(&["analyze", "c.txt", "--forest"], d.path()).status.code(), Some(1));
}

#[test]
fn corridor_and_render() {
    let d = tempfile::tempdir().unwrap();
    bin(&["generate", "--model", "fixture", "--size", "16", "--out", "f.txt"], d.path());
    let o = bin(&["corridor", "f.txt", "--inner", "8", "--outer", "15"], d.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["doors"].as_array().unwrap().len(), 1);
    let o = bin(&["render", "f.txt", "--doors", "--inner", "8", "--outer", "15", "--out", "f.svg"], d.path());
    assert!(o.status.success());
    let svg = fs::read_to_string(d.path().join("f.svg")).unwrap();
    assert!(svg.contains(r#"id="primal""#) && svg.contains(r#"id="doors""#));
}

#[test]
fn config_runs_and_replays() {
    let d = tempfile::tempdir().unwrap();
    let cfg = r#"
master_seed = 9
seeds = 4

[model]
kind = "ust-dual"
width = 14
height = 14

[output]
stats = "rows.csv"
figures = "figs"
"#;
    fs::write(d.path().join("exp.toml"), cfg).unwrap();
    assert!(bin(&["run", "--config", "exp.toml"], d.path()).status.success());
    let first = fs::read(d.path().join("rows.csv")).unwrap();
    let summary = fs::read_to_string(d.path().join("rows.summary.csv")).unwrap();
    assert!(summary.starts_with("column,count,mean,stderr"));
    assert_eq!(fs::read_dir(d.path().join("figs")).unwrap().count(), 4);
    assert!(bin(&["run", "--config", "exp.toml"], d.path()).status.success());
    assert_eq!(fs::read(d.path().join("rows.csv")).unwrap(), first);
}

#[test]
fn config_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("bad.toml"), "seeds = 3").unwrap();
    assert_eq!(bin(&["run", "--config", "bad.toml"], d.path()).status.code(), Some(2));
    assert_eq!(bin(&["analyze", "nope.txt"], d.path()).status.code(), Some(2));
    assert_eq!(bin(&["run", "--model", "drainage", "--p", "x"], d.path()).status.code(), Some(2));
}
