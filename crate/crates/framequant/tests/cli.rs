use std::process::{Command, Output};

use serde_json::Value;

fn framequant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framequant"))
        .args(args)
        .env_remove("FRAMEQUANT_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn csv_rows(out: &Output) -> (String, Vec<Vec<f64>>) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn default_check_passes_with_a_sorted_schema() {
    let out = framequant(&["check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["config"]["d"], 3);
    assert_eq!(r["config"]["n_fock"], 40);
    assert_eq!(r["config"]["seed"], 7);
    assert!(r["version"].is_string());
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.len() >= 12);
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in checks {
        for key in ["name", "paper_ref", "residual", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
        assert!(c["residual"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let out = framequant(&["check", "--tol", "all=1e-30", "--grid", "4,0.25", "--n-fock", "24"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["all_pass"], false);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false && c["tolerance"] == 1e-30));
}

#[test]
fn named_tolerance_override_applies_to_one_check() {
    let out = framequant(&["check", "--tol", "hs_isometry=1e-30", "--grid", "4,0.25", "--n-fock", "24"]);
    let r = json(&out);
    for c in r["checks"].as_array().unwrap() {
        let expected = if c["name"] == "hs_isometry" { 1e-30 } else { c["tolerance"].as_f64().unwrap() };
        assert_eq!(c["tolerance"].as_f64().unwrap(), expected);
    }
    assert_eq!(r["config"]["tolerances"]["hs_isometry"], 1e-30);
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["check", "--d", "4"][..],
        &["quasi", "--s", "1,0"],
        &["wigner", "--grid", ""],
        &["wigner", "--state", "squeezed:1"],
        &["wigner", "--state", "fock:40"],
        &["check", "--tol", "no_such_check=1"],
        &["check", "--tol", "all=-1"],
        &["check", "--n-fock", "1"],
    ] {
        let out = framequant(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("configuration error"), "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_a_config_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_framequant"))
        .args(["star-demo"])
        .env("FRAMEQUANT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn regime_violation_names_the_regime() {
    let out = framequant(&["quasi", "--s", "0.5,0", "--grid", "2,0.5", "--n-fock", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unbounded"));
}

#[test]
fn vacuum_wigner_peaks_at_one_over_pi() {
    let out = framequant(&["wigner"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, "q,p,value");
    assert_eq!(rows.len(), 121 * 121);
    let max = rows.iter().max_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    assert!((max[2] - 1.0 / std::f64::consts::PI).abs() < 1e-10);
    assert_eq!((max[0], max[1]), (0.0, 0.0));
    // Row-major: p varies fastest.
    assert_eq!((rows[0][0], rows[0][1], rows[1][0], rows[1][1]), (-6.0, -6.0, -6.0, -5.9));
}

#[test]
fn first_fock_state_is_negative_at_the_origin() {
    let out = framequant(&["wigner", "--state", "fock:1"]);
    let (_, rows) = csv_rows(&out);
    let origin = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert!((origin[2] + 1.0 / std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn husimi_of_vacuum_is_nonnegative() {
    for s in ["-1,0", "\u{2212}1,0"] {
        let out = framequant(&["quasi", "--s", s]);
        assert_eq!(out.status.code(), Some(0));
        let (header, rows) = csv_rows(&out);
        assert_eq!(header, "q,p,re,im");
        assert!(rows.iter().all(|r| r[2] >= -1e-10));
        let origin = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
        assert!((origin[2] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn coherent_state_quasi_is_centered_on_its_label() {
    // α = 1 − 0.5i sits at (q, p) = √2 (1, −0.5).
    let out = framequant(&["quasi", "--state", "coherent:1,-0.5", "--grid", "4,0.25", "--n-fock", "30"]);
    let (_, rows) = csv_rows(&out);
    let max = rows.iter().max_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    assert!((max[0] - 1.5).abs() <= 0.125 && (max[1] + 0.75).abs() <= 0.125, "{max:?}");
}

#[test]
fn star_demo_reports_a_small_residual() {
    let out = framequant(&["star-demo"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["residual"].as_f64().unwrap() < 1e-9);
    assert!(r["residual_kernel"].as_f64().unwrap() < 1e-9);
    let n = &r["norms"];
    assert!((n["star_product"].as_f64().unwrap() - n["dequantized_ab"].as_f64().unwrap()).abs() < 1e-9);
    let d5 = json(&framequant(&["star-demo", "--d", "5"]));
    assert!(d5["residual_kernel"].is_null());
    assert!(d5["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["check", "--grid", "4,0.25", "--n-fock", "24", "--seed", "11"];
    let a = framequant(&args);
    let b = framequant(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = framequant(&["quasi", "--s", "-0.5,0.2", "--grid", "3,0.5", "--n-fock", "20", "--state", "coherent:0.5,0.5"]);
    let d = framequant(&["quasi", "--s", "-0.5,0.2", "--grid", "3,0.5", "--n-fock", "20", "--state", "coherent:0.5,0.5"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn seed_changes_random_inputs() {
    let a = json(&framequant(&["star-demo", "--seed", "1"]));
    let b = json(&framequant(&["star-demo", "--seed", "2"]));
    assert_ne!(a["norms"]["dequantized_a"], b["norms"]["dequantized_a"]);
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("framequant-cli-{}.csv", std::process::id()));
    let out = framequant(&["wigner", "--grid", "2,0.5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("q,p,value\n"));
    assert_eq!(text.lines().count(), 1 + 81);
}

#[test]
fn csv_floats_round_trip() {
    let out = framequant(&["wigner", "--grid", "2,0.5", "--state", "coherent:0.3,0.1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(framequant::fmt_f64(v), field);
        }
    }
}
