use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manakov"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn spectrum_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["spectrum", "--spin", "15"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,y,irrep,residual"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 961);
    let first: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(first.len(), 4);
    first[2].parse::<manakov::IrrepLabel>().unwrap();
    assert_eq!(json(&dir.path().join("clusters.json"))["schema"], 1);
}

#[test]
fn spectrum_single_irrep() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["spectrum", "--spin", "15", "--irrep", "B2_a"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(csv.lines().count(), 121);
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(2) == Some("B2_a")));
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["spectrum", "--spin", "1.5"][..],
        &["spectrum", "--spin", "0"],
        &["spectrum", "--a", "0.5", "--b", "0.5", "--spin", "3"],
        &["spectrum", "--irrep", "C7"],
        &["classical", "--a", "0.25", "--b", "0.75"],
        &["monodromy", "--preset", "generic", "--a", "2", "--b", "1"],
        &["monodromy", "--preset", "limiting", "--spin", "2"],
    ] {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn classical_json() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["classical", "--svg"]).status.success());
    let v = json(&dir.path().join("classical.json"));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["lines"].as_array().unwrap().len(), 4);
    assert_eq!(v["regions"].as_array().unwrap().len(), 4);
    assert!(dir.path().join("classical.svg").exists());
}

#[test]
fn limiting_monodromy_json() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["monodromy", "--preset", "limiting"]).status.success());
    let v = json(&dir.path().join("monodromy.json"));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["matrix"], serde_json::json!([[1, 0], [2, 1]]));
    assert!(run(dir.path(), &["monodromy", "--preset", "limiting", "--basis", "alt"]).status.success());
    let v = json(&dir.path().join("monodromy.json"));
    assert_eq!(v["matrix"], serde_json::json!([[3, 2], [-2, -1]]));
}

#[test]
fn components_outside_image_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["components", "--probe", "0", "0.1", "--samples", "200000"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&dir.path().join("components.json"));
    assert_eq!(v["probes"][0]["outcome"]["verdict"], "inconclusive");
}

#[test]
fn components_at_limiting_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["components", "--a", "2", "--b", "1", "--probe", "0", "-2"]);
    assert!(out.status.success());
    let v = json(&dir.path().join("components.json"));
    assert_eq!(v["probes"][0]["outcome"]["verdict"]["components"], 2);
}
