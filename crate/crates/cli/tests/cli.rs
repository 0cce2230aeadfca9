use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const JET: &str = r#"{
  "n": 1,
  "intervals": [[0, 0.3], [0.7, 1]],
  "pieces": [
    {"gamma": [[[0.1, 1, -0.5], [0, 0.3]]], "height": [0, -0.06, 0, -0.1]},
    {"gamma": [[[0.1, 1, -0.5], [0, 0.3]]], "height": [0, -0.06, 0, -0.1]}
  ]
}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwhitney")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_jet(dir: &TempDir) -> std::path::PathBuf {
    let p = dir.path().join("jet.json");
    fs::write(&p, JET).unwrap();
    p
}

#[test]
fn validate_accepts_restricted_curve() {
    let dir = TempDir::new().unwrap();
    let jet = write_jet(&dir);
    let out = run(&["validate", "--input", path_str(&jet)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let verdict: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict["extendable"], true);
}

#[test]
fn counterexample_jet_is_rejected_naming_area() {
    let dir = TempDir::new().unwrap();
    let table = dir.path().join("table.csv");
    let jet = dir.path().join("cx.json");
    let out = run(&["counterexample", "--levels", "11", "--output", path_str(&table), "--jet", path_str(&jet)]);
    assert_eq!(out.status.code(), Some(0));

    let text = fs::read_to_string(&table).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 12);
    let last: Vec<&str> = rows[11].split(',').collect();
    assert_eq!(last[0], "10");
    let ratio: f64 = last[2].parse().unwrap();
    let expected = 32.0 / 3.0 * (4.0f64 / 3.0).powi(10);
    assert!((ratio - expected).abs() <= 1e-12 * expected);

    let out = run(&["validate", "--input", path_str(&jet)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("area"));

    let manifest = dir.path().join("m.json");
    let out = run(&["extend", "--input", path_str(&jet), "--output", path_str(&manifest)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!manifest.exists());
}

#[test]
fn extend_sample_round_trip_and_determinism() {
    let dir = TempDir::new().unwrap();
    let jet = write_jet(&dir);
    let m1 = dir.path().join("a.json");
    let m2 = dir.path().join("b.json");
    for m in [&m1, &m2] {
        let out = run(&["extend", "--input", path_str(&jet), "--output", path_str(m), "--window=-0.2,1.2"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(&m1).unwrap(), fs::read(&m2).unwrap());
    assert_eq!(fs::read(m1.with_extension("csv")).unwrap(), fs::read(m2.with_extension("csv")).unwrap());

    let out = run(&["verify", "--input", path_str(&m1)]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["sample", "--input", path_str(&m1), "--on-k", "--samples", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut count = 0;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let s = v[0];
        let f = 0.1 + s - 0.5 * s * s;
        let g = 0.3 * s;
        let h = -0.06 * s - 0.1 * s * s * s;
        for (got, want) in v[1..4].iter().zip([f, g, h]) {
            assert!((got - want).abs() <= 1e-12, "s = {s}: {got} vs {want}");
        }
        count += 1;
    }
    assert_eq!(count, 18);

    let a = run(&["sample", "--input", path_str(&m1), "--random", "25", "--seed", "3"]);
    let b = run(&["sample", "--input", path_str(&m1), "--random", "25", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 26);
}

#[test]
fn forced_counterexample_verifies() {
    let dir = TempDir::new().unwrap();
    let jet = dir.path().join("cx.json");
    assert!(run(&["counterexample", "--levels", "4", "--jet", path_str(&jet)]).status.success());
    let manifest = dir.path().join("m.json");
    let out = run(&["extend", "--input", path_str(&jet), "--output", path_str(&manifest), "--force"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn tampered_manifest_fails_verification() {
    let dir = TempDir::new().unwrap();
    let jet = write_jet(&dir);
    let manifest = dir.path().join("m.json");
    assert!(run(&["extend", "--input", path_str(&jet), "--output", path_str(&manifest)]).status.success());
    let mut value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    value["jet"]["pieces"][1]["height"][0] = serde_json::json!(0.01);
    fs::write(&manifest, serde_json::to_string(&value).unwrap()).unwrap();
    let out = run(&["verify", "--input", path_str(&manifest)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seamJumps"));
}

#[test]
fn luzin_corner_respects_budget() {
    let dir = TempDir::new().unwrap();
    let result = dir.path().join("luzin.json");
    let out = run(&["luzin", "--eps", "0.05", "--output", path_str(&result)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&result).unwrap()).unwrap();
    assert!(value["measureRemoved"].as_f64().unwrap() < 0.05);
    assert!(result.with_extension("csv").exists());
}

#[test]
fn malformed_input_reports_location() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"n\": 1,\n  \"intervals\": [[0, 1]\n").unwrap();
    let out = run(&["validate", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["extend"]).status.code(), Some(1));
    assert_eq!(run(&["luzin", "--output", "/dev/null"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
