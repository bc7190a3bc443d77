//! End-to-end agreement between the closed forms and the independent
//! radial-ODE oracle, exercised through the public API only.

use num_complex::Complex64;
use susyscat_core::oracle::{self, IntegratorSpec, Method};
use susyscat_core::phase::phase_shift;
use susyscat_core::{smatrix, xspace, KGrid, ModelParams, PotentialTag};

fn toy() -> ModelParams {
    ModelParams::new(3.0, 0.5, -0.1).unwrap()
}

#[test]
fn numeric_smatrix_matches_background_closed_form() {
    let p = toy();
    let spec = IntegratorSpec::background(&p);
    let mut worst = 0.0f64;
    for k in susyscat_core::log_spaced_k(0.05, 10.0, 20).unwrap() {
        let s = oracle::numeric_smatrix(
            |x| Complex64::new(xspace::v0(x, &p).unwrap(), 0.0),
            PotentialTag::V0,
            k,
            &spec,
        )
        .unwrap();
        let closed = smatrix::s0(k, &p).unwrap();
        worst = worst.max((s - closed).norm() / closed.norm());
    }
    assert!(worst < 1e-6, "worst relative deviation {worst:e}");
}

#[test]
fn numeric_smatrix_matches_partner_closed_form() {
    let p = toy();
    let spec = IntegratorSpec::partner(&p);
    let mut worst = 0.0f64;
    for k in susyscat_core::log_spaced_k(0.05, 10.0, 20).unwrap() {
        let s = oracle::numeric_smatrix(
            |x| xspace::potential_v(x, &p).unwrap(),
            PotentialTag::VComplex,
            k,
            &spec,
        )
        .unwrap();
        let closed = smatrix::s_optical(k, &p).unwrap();
        worst = worst.max((s - closed).norm() / closed.norm());
    }
    assert!(worst < 1e-5, "worst relative deviation {worst:e}");
}

#[test]
fn rk4_backend_reproduces_partner_smatrix() {
    let p = toy();
    let spec = IntegratorSpec::partner(&p).with_method(Method::Rk4);
    for &k in &[0.3, 0.5, 1.1] {
        let s = oracle::numeric_smatrix(
            |x| xspace::potential_v(x, &p).unwrap(),
            PotentialTag::VComplex,
            k,
            &spec,
        )
        .unwrap();
        let closed = smatrix::s_optical(k, &p).unwrap();
        assert!(
            (s - closed).norm() / closed.norm() < 1e-5,
            "RK4 deviation at k = {k}"
        );
    }
}

#[test]
fn full_verification_gate_is_green() {
    let p = toy();
    let report = oracle::full_verification(
        &p,
        &IntegratorSpec::background(&p),
        &IntegratorSpec::partner(&p),
    )
    .unwrap();
    for item in &report.items {
        assert!(
            item.pass,
            "{} failed: residual {:e} > {:e}",
            item.name, item.residual, item.tolerance
        );
    }
    assert!(report.passed);
}

#[test]
fn effective_range_agrees_with_unwrapped_phase() {
    // g_R = k cot(delta_R) with delta_R from the unwrapped phase of S_R:
    // two fully independent routes to the same function
    let p = toy();
    let grid = KGrid::new(0.05, 3.0, 2000).unwrap();
    let er = smatrix::effective_range(&grid, &p).unwrap();
    let fam = smatrix::SMatrixFamily::compute(&grid, &p).unwrap();
    let delta_r = phase_shift(&fam.curve_resonance()).unwrap();
    for i in 0..er.k.len() {
        if !er.valid[i] {
            continue;
        }
        let g_phase = er.k[i] / delta_r.values[i].tan();
        assert!(
            (er.g_r[i] - g_phase).abs() < 1e-8 * (1.0 + er.g_r[i].abs()),
            "k = {}: {} vs {}",
            er.k[i],
            er.g_r[i],
            g_phase
        );
    }
}
