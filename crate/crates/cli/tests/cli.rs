//! Behavior of the `susyscat` binary: file content, exit codes, config
//! precedence and output determinism.

use std::collections::HashMap;
use std::path::Path;
use std::process::{Command, Output};

use susyscat_core::resonance::{prominence_ratio, PROMINENCE_THRESHOLD};
use susyscat_core::{smatrix, ModelParams, RealCurve};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_susyscat")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should run")
}

fn read_csv(path: &Path) -> (Vec<String>, HashMap<String, Vec<f64>>) {
    let text = std::fs::read_to_string(path).expect("table should exist");
    let mut lines = text.lines();
    let headers: Vec<String> = lines
        .next()
        .expect("header line")
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let mut columns: HashMap<String, Vec<f64>> =
        headers.iter().map(|h| (h.clone(), Vec::new())).collect();
    for line in lines {
        for (h, cell) in headers.iter().zip(line.split(',')) {
            columns
                .get_mut(h)
                .unwrap()
                .push(cell.parse::<f64>().expect("numeric cell"));
        }
    }
    (headers, columns)
}

fn toy() -> ModelParams {
    ModelParams::new(3.0, 0.5, -0.1).unwrap()
}

#[test]
fn curves_table_matches_generating_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["curves"]);
    assert!(out.status.success());
    let (headers, cols) = read_csv(&dir.path().join("curves.csv"));
    assert_eq!(
        headers,
        ["k", "sigma0", "sigma_e", "sigma_r", "sigma_t", "sigma_h", "sigmaR", "sigmaBW"]
    );
    let ks = &cols["k"];
    assert_eq!(ks.len(), 2000);

    // re-reading and re-evaluating at the stored k reproduces every value
    let p = toy();
    let pi = std::f64::consts::PI;
    for (i, &k) in ks.iter().enumerate() {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
        assert!(close(cols["sigma0"][i], 4.0 * pi / (k * k + 9.0)));
        let s_cap_h = smatrix::s_optical(k, &p).unwrap();
        assert!(close(
            cols["sigma_e"][i],
            pi / (k * k) * (s_cap_h - 1.0).norm_sqr()
        ));
        assert!(close(
            cols["sigma_r"][i],
            pi / (k * k) * 4.0 * 0.5 * k / ((0.5 + k) * (0.5 + k) + 0.01)
        ));
        assert!(close(cols["sigmaR"][i], smatrix::sigma_res(k, &p).unwrap()));
        assert!(close(cols["sigmaBW"][i], smatrix::sigma_bw(k, &p).unwrap()));
        let s_h = smatrix::s_hermitian(k, &p).unwrap();
        assert!(close(
            cols["sigma_h"][i],
            pi / (k * k) * (s_h - 1.0).norm_sqr()
        ));
        assert!(close(
            cols["sigma_t"][i],
            cols["sigma_e"][i] + cols["sigma_r"][i]
        ));
    }

    // the row nearest k = 0.5 agrees with the Lorentzian formula
    let i = ks
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - 0.5).abs().total_cmp(&(b.1 - 0.5).abs()))
        .unwrap()
        .0;
    let formula = smatrix::sigma_bw(ks[i], &p).unwrap();
    assert!((cols["sigmaBW"][i] - formula).abs() / formula < 0.01);

    // the total cross section of the complex potential shows no peak
    let sigma_t = RealCurve::new(ks.clone(), cols["sigma_t"].clone()).unwrap();
    assert!(prominence_ratio(&sigma_t, 0.3, 1.5) <= PROMINENCE_THRESHOLD);
}

#[test]
fn curves_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["curves", "--n-k", "10"]);
    assert!(out.status.success());
    let (_, cols) = read_csv(&dir.path().join("curves.csv"));
    assert_eq!(cols["k"].len(), 10);
}

#[test]
fn phases_multi_d_files_and_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["phases", "--d", "-0.1", "--d", "-0.5", "--d", "-1.0"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let mut slopes = Vec::new();
    for d in ["-0.1", "-0.5", "-1"] {
        let (headers, cols) = read_csv(&dir.path().join(format!("phases_d{d}.csv")));
        assert_eq!(headers, ["k", "delta0", "deltaR", "deltaBW", "delta_h"]);
        let ks = &cols["k"];
        // columnwise half-phase identity
        for (i, (bw, r)) in cols["deltaBW"].iter().zip(&cols["deltaR"]).enumerate() {
            assert!(
                (bw - 2.0 * r).abs() < 1e-9,
                "deltaBW != 2 deltaR at row {i} for d = {d}"
            );
        }
        let i = ks
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - 0.5).abs().total_cmp(&(b.1 - 0.5).abs()))
            .unwrap()
            .0;
        slopes.push((cols["delta_h"][i + 1] - cols["delta_h"][i - 1]) / (ks[i + 1] - ks[i - 1]));
    }
    // the steepest rise at k = 0.5 belongs to the smallest |d|
    assert!(slopes[0] > slopes[1] && slopes[1] > slopes[2], "{slopes:?}");
}

#[test]
fn phases_single_d_is_one_five_column_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["phases", "--n-k", "200"]);
    assert!(out.status.success());
    let (headers, cols) = read_csv(&dir.path().join("phases.csv"));
    assert_eq!(headers.len(), 5);
    assert_eq!(cols["k"].len(), 200);
}

#[test]
fn potential_table_boundary_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["potential"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("trapezoid"), "integral should be recorded");

    let (_, cols) = read_csv(&dir.path().join("potential.csv"));
    assert_eq!(cols["x"][0], 0.0);
    assert!((cols["re_v"][0] + 18.48).abs() < 1e-12);
    assert!((cols["im_v"][0] + 0.2).abs() < 1e-12);
    assert!(cols["v0"][0].is_nan());
    assert!(cols["re_w"][0].is_nan());
    assert!(cols["im_w"][0].is_nan());

    let last = cols["x"].len() - 1;
    let v_last = (cols["re_v"][last].powi(2) + cols["im_v"][last].powi(2)).sqrt();
    assert!(v_last < 1e-12, "tail |V| = {v_last:e}");
}

#[test]
fn verify_passes_on_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["verify"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout should be the JSON report");
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
}

#[test]
fn verify_rejects_positive_d() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["verify", "--d", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_flags_coarse_integration_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["verify", "--n-x", "50"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sweep_columns_and_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["sweep", "--d", "-1", "--d", "-0.5", "--d", "-0.1"],
    );
    assert!(out.status.success());
    let (headers, cols) = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!(
        headers,
        [
            "d",
            "k_peak",
            "sigma_peak",
            "width",
            "sH_abs_at_b",
            "phase_slope_at_b"
        ]
    );
    let expect = [
        std::f64::consts::FRAC_1_SQRT_2,
        0.4472135954999579,
        0.09950371902099893,
    ];
    for (i, e) in expect.iter().enumerate() {
        assert!((cols["sH_abs_at_b"][i] - e).abs() < 1e-3);
    }
    assert!(cols["sigma_peak"][0] < cols["sigma_peak"][1]);
    assert!(cols["sigma_peak"][1] < cols["sigma_peak"][2]);

    let out = run_in(dir.path(), &["sweep"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "missing d list is a usage error"
    );
}

#[test]
fn fit_reports_breit_wigner_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["fit", "--curve", "sigmaBW"]);
    assert!(out.status.success());
    let fit: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(fit["curve"], "sigmaBW");
    let e0 = fit["e0_implied"].as_f64().unwrap();
    let gamma = fit["gamma_implied"].as_f64().unwrap();
    assert!((e0 - 0.24).abs() < 1e-4);
    assert!((gamma - 0.2).abs() / 0.2 < 0.01);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in [
        vec!["curves", "--out", "a"],
        vec!["sweep", "--d", "-0.3", "--d", "-0.1", "--out", "a"],
    ] {
        let mut first = cmd.clone();
        let mut second = cmd.clone();
        *first.last_mut().unwrap() = "first.csv";
        *second.last_mut().unwrap() = "second.csv";
        assert!(run_in(dir.path(), &first).status.success());
        assert!(run_in(dir.path(), &second).status.success());
        let a = std::fs::read(dir.path().join("first.csv")).unwrap();
        let b = std::fs::read(dir.path().join("second.csv")).unwrap();
        assert_eq!(a, b, "run of {cmd:?} not reproducible");
    }
}

#[test]
fn config_file_layering() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("cfg.json"),
        r#"{"a1": 4.0, "n_k": 25, "d": [-0.2]}"#,
    )
    .unwrap();
    // flag a1 overrides the file; file n_k and d override the defaults
    let out = run_in(
        dir.path(),
        &["curves", "--config", "cfg.json", "--a1", "3.0"],
    );
    assert!(out.status.success());
    let (_, cols) = read_csv(&dir.path().join("curves.csv"));
    assert_eq!(cols["k"].len(), 25);
    let p = ModelParams::new(3.0, 0.5, -0.2).unwrap();
    let k = cols["k"][0];
    assert!((cols["sigma0"][0] - smatrix::sigma0_at_zero(&p) * 9.0 / (k * k + 9.0)).abs() < 1e-12);
    assert!((cols["sigmaBW"][0] - smatrix::sigma_bw(k, &p).unwrap()).abs() < 1e-12);
}

#[test]
fn unknown_config_keys_are_parameter_errors() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"bogus": 1}"#).unwrap();
    let out = run_in(dir.path(), &["curves", "--config", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format_parses_with_expected_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["curves", "--format", "json", "--n-k", "12"]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("curves.json")).unwrap())
            .unwrap();
    for col in [
        "k", "sigma0", "sigma_e", "sigma_r", "sigma_t", "sigma_h", "sigmaR", "sigmaBW",
    ] {
        assert_eq!(v[col].as_array().unwrap().len(), 12);
    }
}
