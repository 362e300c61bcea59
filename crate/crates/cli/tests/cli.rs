//! End-to-end tests of the binary: exit codes, artifact shapes, atomic
//! failure behavior, and byte-level determinism under a fixed seed.

use std::path::Path;
use std::process::{Command, Output};

fn hstube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hstube"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn halfplane_config(dir: &Path) -> String {
    let cos_csv = dir.join("cos.csv");
    let mut csv = String::from("index,re,im\n");
    for j in 0..16 {
        let x = j as f64 * 2.0 * std::f64::consts::PI / 16.0;
        csv.push_str(&format!("{j},{},0.0\n", 2.0 * x.cos()));
    }
    write(&cos_csv, &csv);
    let measure = dir.join("measure.json");
    write(&measure, r#"[{"x":[0.0],"y":[1.0],"mass":1.0}]"#);
    format!(
        r#"{{
  "cone": {{"kind": "orthant", "dim": 1}},
  "order": 0,
  "kernel": {{"grid": [{{"x": [0.0], "y": [1.0]}}, {{"x": [0.3], "y": [0.7]}}],
             "w": {{"x": [0.0], "y": [1.0]}}}},
  "decompose": {{"grid_file": {cos:?}, "dim": 1, "points_per_axis": 16,
                "period": 6.283185307179586}},
  "norms": {{"density": {{"kind": "exponential"}}, "derivatives": []}},
  "carleson": {{"measure_file": {measure:?}, "frame": [{{"x": [0.0], "y": [1.0]}}]}},
  "operators": {{"symbol": {{"kind": "constant", "re": 1.0}},
                "b_re": [0.0], "b_im": [1.0],
                "witnesses": [{{"x": [0.0], "y": [1.0]}}],
                "densities": [{{"kind": "exponential"}}]}}
}}"#,
        cos = cos_csv.to_str().unwrap(),
        measure = measure.to_str().unwrap(),
    )
}

#[test]
fn verify_default_config_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = hstube(&["verify", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("kernel_closed_form: pass"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap())
            .unwrap();
    assert_eq!(report["all_pass"], serde_json::Value::Bool(true));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for d in [&d1, &d2] {
        let out = hstube(&["verify", "--seed", "7", "--out", d.path().to_str().unwrap()]);
        assert!(out.status.success());
    }
    let a = std::fs::read(d1.path().join("verify.json")).unwrap();
    let b = std::fs::read(d2.path().join("verify.json")).unwrap();
    assert_eq!(a, b, "same seed must give byte-identical reports");
}

#[test]
fn kernel_csv_matches_closed_form_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    write(&cfg, &halfplane_config(dir.path()));
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let res = hstube(&["kernel", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    }
    let a = std::fs::read(out_a.join("kernel.csv")).unwrap();
    let b = std::fs::read(out_b.join("kernel.csv")).unwrap();
    assert_eq!(a, b);
    // K(i, i) = 1/2 on the half-plane
    let text = String::from_utf8(a).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let re_k: f64 = row[3].parse().unwrap();
    let diag: f64 = row[5].parse().unwrap();
    assert!((re_k - 0.5).abs() < 1e-12 && (diag - 0.5).abs() < 1e-12);
}

#[test]
fn decompose_reproduces_cosine_split() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    write(&cfg, &halfplane_config(dir.path()));
    let res = hstube(&["decompose", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(res.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("decompose.json")).unwrap())
            .unwrap();
    assert!((report["boundary_norm_sq"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    assert!((report["plus_norm_sq"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((report["minus_norm_sq"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(report["defect"].as_f64().unwrap() < 1e-12);
}

#[test]
fn invalid_point_exits_2_without_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let text = halfplane_config(dir.path()).replace(r#""w": {"x": [0.0], "y": [1.0]}"#, r#""w": {"x": [0.0], "y": [-1.0]}"#);
    write(&cfg, &text);
    let out_dir = dir.path().join("out");
    let res = hstube(&["kernel", "--config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    assert!(!out_dir.exists(), "config failures must not leave artifacts");
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    write(&cfg, "{\"cone\": 42}");
    let res = hstube(&["norms", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_3_with_error_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    // a grid point so far along the boundary that no rule can resolve the
    // oscillation: setup accepts it, the kernel evaluation cannot
    let text = halfplane_config(dir.path())
        .replace(r#"{"x": [0.3], "y": [0.7]}"#, r#"{"x": [5000.0], "y": [0.7]}"#);
    write(&cfg, &text);
    let out_dir = dir.path().join("out");
    let res = hstube(&["kernel", "--config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(3));
    assert!(!out_dir.join("kernel.csv").exists(), "no partial CSV on failure");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("error.json")).unwrap())
            .unwrap();
    assert_eq!(report["command"], "kernel");
    assert!(!report["error"].as_str().unwrap().is_empty());
}

#[test]
fn norms_reports_closed_form_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let text = halfplane_config(dir.path())
        .replace("\"order\": 0", "\"order\": 1")
        .replace("\"derivatives\": []", "\"derivatives\": [[1]]");
    write(&cfg, &text);
    let res = hstube(&["norms", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("norms.json")).unwrap())
            .unwrap();
    // |e^{-xi}|_{H^1}^2 = 3/4 and |d/dz F|_{H^2} = 1/2
    assert!((report["hs_norm"].as_f64().unwrap() - 0.75f64.sqrt()).abs() < 1e-10);
    assert!(
        (report["derivatives"][0]["h2_norm"].as_f64().unwrap() - 0.5).abs() < 1e-10
    );
}

#[test]
fn carleson_point_mass_bound() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    write(&cfg, &halfplane_config(dir.path()));
    let res = hstube(&["carleson", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(res.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("carleson.json")).unwrap())
            .unwrap();
    assert!((report["kernel_test_sup"].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert!((report["embedding_lower_bound"].as_f64().unwrap() - 0.5).abs() < 1e-8);
}

#[test]
fn operators_report_ratio_and_contraction() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    write(&cfg, &halfplane_config(dir.path()));
    let res = hstube(&["operators", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(res.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("operators.json")).unwrap())
            .unwrap();
    assert!(report["adjoint_defect"].as_f64().unwrap() < 1e-7);
    // necessary ratio 1/2 for psi = 1, b = i at w = i
    let ratio = report["witnesses"][0]["necessary_ratio"].as_f64().unwrap();
    assert!((ratio - 0.5).abs() < 1e-8);
    let row = &report["contraction"][0];
    assert!(row["norm_after"].as_f64().unwrap() <= row["norm_before"].as_f64().unwrap() * (1.0 + 1e-10));
}
