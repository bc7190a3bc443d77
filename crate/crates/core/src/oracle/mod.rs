//! Independent numerical verification of the closed forms: fixed-step
//! integration of the radial equation for both potentials, asymptotic
//! amplitude extraction and S-matrix comparison.
//!
//! Two unrelated schemes are provided. Numerov is the default; a
//! Runge-Kutta integration of the first-order system cross-checks it, so a
//! scheme-specific artifact cannot slip through.

pub mod fd;
mod verify;

pub use verify::{full_verification, verify_identities, verify_oracle, VerifyItem, VerifyReport};

use num_complex::Complex64;

use crate::error::{Result, ScatterError};
use crate::params::{ModelParams, XGrid};
use crate::wave::{PotentialTag, WaveSolution};

/// Integration backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Numerov,
    Rk4,
}

/// Fixed-step integration setup.
///
/// `origin_order` is the power of the leading origin behavior of the
/// regular solution: 2 for the singular background (nu = 1), 1 for the
/// regular partner potential.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorSpec {
    pub method: Method,
    pub step: f64,
    pub x_start: f64,
    pub x_match: f64,
    pub origin_order: u32,
}

/// Phase resolution bound: step * k must stay below this.
pub const STEP_K_LIMIT: f64 = 0.05;

/// Relative cross-validation tolerance between the two matching points.
pub const MATCH_TOL: f64 = 1e-6;

impl IntegratorSpec {
    /// Default spec for the singular background potential.
    pub fn background(p: &ModelParams) -> Self {
        Self {
            method: Method::Numerov,
            step: 1e-3,
            x_start: 1e-4,
            x_match: 25.0 / p.a1(),
            origin_order: 2,
        }
    }

    /// Default spec for the regular complex partner potential.
    pub fn partner(p: &ModelParams) -> Self {
        let step = 1e-3;
        Self {
            method: Method::Numerov,
            step,
            x_start: step / 2.0,
            x_match: 25.0 / p.a1(),
            origin_order: 1,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    /// Change the step, keeping the origin seed point consistent for
    /// regular potentials.
    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        if self.origin_order == 1 {
            self.x_start = step / 2.0;
        }
        self
    }

    pub fn validate(&self, k: f64) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(ScatterError::InvalidIntegratorSpec(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if self.step * k >= STEP_K_LIMIT {
            return Err(ScatterError::InvalidIntegratorSpec(format!(
                "step {} too coarse for k = {k}: step * k must stay below {STEP_K_LIMIT}",
                self.step
            )));
        }
        match self.origin_order {
            1 => {
                if self.x_start > 0.5 * self.step * (1.0 + 1e-12) || self.x_start <= 0.0 {
                    return Err(ScatterError::InvalidIntegratorSpec(format!(
                        "regular potentials start at x <= step/2, got x_start = {}",
                        self.x_start
                    )));
                }
            }
            2 => {
                if self.x_start < 1e-4 {
                    return Err(ScatterError::InvalidIntegratorSpec(format!(
                        "singular potentials start at x >= 1e-4, got x_start = {}",
                        self.x_start
                    )));
                }
            }
            o => {
                return Err(ScatterError::InvalidIntegratorSpec(format!(
                    "unsupported origin order {o}"
                )))
            }
        }
        if self.x_match <= self.x_start + 10.0 * self.step {
            return Err(ScatterError::InvalidIntegratorSpec(format!(
                "x_match = {} leaves no room to integrate",
                self.x_match
            )));
        }
        Ok(())
    }
}

/// Asymptotic amplitudes of a solution, `psi -> A e^{ikx} + B e^{-ikx}`.
#[derive(Debug, Clone, Copy)]
pub struct AmplitudePair {
    pub a: Complex64,
    pub b: Complex64,
    pub k: f64,
}

impl AmplitudePair {
    /// The S-matrix element `-A/B`.
    pub fn s_matrix(&self) -> Complex64 {
        -self.a / self.b
    }
}

/// Origin series seed derived from the potential's own expansion; the
/// closed-form solutions are never consulted here.
fn seed(
    potential: &dyn Fn(f64) -> Complex64,
    k: f64,
    origin_order: u32,
) -> (impl Fn(f64) -> Complex64, impl Fn(f64) -> Complex64) {
    let k2 = Complex64::new(k * k, 0.0);
    let (c_low, c_high) = match origin_order {
        1 => {
            // psi = x + (V(0) - k^2) x^3 / 6
            let c3 = (potential(0.0) - k2) / 6.0;
            (Complex64::new(1.0, 0.0), c3)
        }
        _ => {
            // psi = x^2 (1 + c2 x^2), c2 = (v_reg(0) - k^2) / 10,
            // with the regular part probed just off the 2/x^2 core
            let x_probe = 1e-3;
            let v_reg = potential(x_probe) - 2.0 / (x_probe * x_probe);
            ((v_reg - k2) / 10.0, Complex64::default())
        }
    };
    let order = origin_order;
    let value = move |x: f64| -> Complex64 {
        match order {
            1 => c_low * x + c_high * x.powi(3),
            _ => x * x * (1.0 + c_low * x * x),
        }
    };
    let deriv = move |x: f64| -> Complex64 {
        match order {
            1 => c_low + 3.0 * c_high * x * x,
            _ => 2.0 * x + 4.0 * c_low * x.powi(3),
        }
    };
    (value, deriv)
}

const RENORM_INTERVAL: usize = 1000;
const RENORM_THRESHOLD: f64 = 1e100;

/// Integrates `-psi'' + (potential - k^2) psi = 0` outward from the origin
/// series to just past `spec.x_match`. Overflow is handled by rescaling the
/// whole solution and recording the accumulated log-scale; ratios of
/// amplitudes are unaffected.
pub fn integrate<F>(
    potential: F,
    tag: PotentialTag,
    k: f64,
    spec: &IntegratorSpec,
) -> Result<WaveSolution>
where
    F: Fn(f64) -> Complex64,
{
    if !k.is_finite() || k <= 0.0 {
        return Err(ScatterError::Domain(format!(
            "integration requires k > 0, got {k}"
        )));
    }
    spec.validate(k)?;

    let tail = potential(spec.x_match).norm();
    let threshold = 1e-12 * k * k;
    if tail >= threshold {
        return Err(ScatterError::TailNotAsymptotic {
            x_match: spec.x_match,
            magnitude: tail,
            threshold,
        });
    }

    let h = spec.step;
    let n_match = ((spec.x_match - spec.x_start) / h).round() as usize;
    let n_nodes = n_match + 3; // two nodes past the match point for stencils
    let x_at = |i: usize| spec.x_start + h * i as f64;
    let grid = XGrid::new(spec.x_start, x_at(n_nodes - 1), n_nodes)?;

    let k2 = Complex64::new(k * k, 0.0);
    let f = |x: f64| potential(x) - k2;
    let (seed_val, seed_deriv) = seed(&potential, k, spec.origin_order);

    let mut log_scale = 0.0f64;
    let mut values: Vec<Complex64> = Vec::with_capacity(n_nodes);
    let mut derivatives: Vec<Complex64>;

    match spec.method {
        Method::Numerov => {
            values.push(seed_val(x_at(0)));
            values.push(seed_val(x_at(1)));
            let h2 = h * h;
            let mut f_prev = f(x_at(0));
            let mut f_curr = f(x_at(1));
            for i in 1..n_nodes - 1 {
                let f_next = f(x_at(i + 1));
                let y_next = (2.0 * (1.0 + 5.0 / 12.0 * h2 * f_curr) * values[i]
                    - (1.0 - h2 / 12.0 * f_prev) * values[i - 1])
                    / (1.0 - h2 / 12.0 * f_next);
                values.push(y_next);
                f_prev = f_curr;
                f_curr = f_next;
                if i % RENORM_INTERVAL == 0 {
                    log_scale += renormalize(&mut values, k)?;
                }
            }
            derivatives = fd::sample_derivatives(&values, h);
        }
        Method::Rk4 => {
            derivatives = Vec::with_capacity(n_nodes);
            let mut y = seed_val(x_at(0));
            let mut dy = seed_deriv(x_at(0));
            values.push(y);
            derivatives.push(dy);
            for i in 0..n_nodes - 1 {
                let x = x_at(i);
                let (k1y, k1d) = (dy, f(x) * y);
                let (k2y, k2d) = (dy + 0.5 * h * k1d, f(x + 0.5 * h) * (y + 0.5 * h * k1y));
                let (k3y, k3d) = (dy + 0.5 * h * k2d, f(x + 0.5 * h) * (y + 0.5 * h * k2y));
                let (k4y, k4d) = (dy + h * k3d, f(x + h) * (y + h * k3y));
                y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
                dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
                values.push(y);
                derivatives.push(dy);
                if (i + 1) % RENORM_INTERVAL == 0 {
                    let s = renormalize(&mut values, k)?;
                    if s != 0.0 {
                        let c = (-s).exp();
                        for d in derivatives.iter_mut() {
                            *d *= c;
                        }
                        y = *values.last().unwrap();
                        dy = *derivatives.last().unwrap();
                    }
                    log_scale += s;
                }
            }
        }
    }

    let sol = WaveSolution {
        k,
        grid,
        values,
        derivatives,
        potential_tag: tag,
        log_scale,
    };
    if !sol.is_finite() {
        return Err(ScatterError::IntegrationFailure(format!(
            "non-finite wavefunction at k = {k}"
        )));
    }
    Ok(sol)
}

fn renormalize(values: &mut [Complex64], k: f64) -> Result<f64> {
    let tail = &values[values.len().saturating_sub(2)..];
    let m = tail.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if !m.is_finite() {
        return Err(ScatterError::IntegrationFailure(format!(
            "overflow before renormalization at k = {k}"
        )));
    }
    if m > RENORM_THRESHOLD {
        let inv = 1.0 / m;
        for v in values.iter_mut() {
            *v *= inv;
        }
        return Ok(m.ln());
    }
    Ok(0.0)
}

/// Solves the 2x2 asymptotic system at the node nearest `x_match` and
/// cross-validates against a second matching point roughly a wavelength
/// inward. Disagreement beyond [`MATCH_TOL`] means the tail was not yet
/// asymptotic.
pub fn extract_amplitudes(sol: &WaveSolution, k: f64, x_match: f64) -> Result<AmplitudePair> {
    let n = sol.grid.len();
    if n < 7 {
        return Err(ScatterError::Precondition(
            "solution grid too short for amplitude extraction".into(),
        ));
    }
    let i_match = sol.grid.nearest(x_match).clamp(2, n - 3);
    let primary = amplitudes_at(sol, k, i_match)?;

    let h = sol.grid.spacing();
    let offset = (1.0 / k).min(sol.grid.node(i_match) / 3.0);
    let back = ((offset / h).round() as usize).max(2);
    let i_second = i_match.saturating_sub(back).max(2);
    let second = amplitudes_at(sol, k, i_second)?;

    let s1 = primary.s_matrix();
    let s2 = second.s_matrix();
    let mismatch = (s1 - s2).norm() / s1.norm().max(s2.norm()).max(1e-12);
    if mismatch > MATCH_TOL {
        return Err(ScatterError::MatchingWindow {
            k,
            mismatch,
            tol: MATCH_TOL,
        });
    }
    Ok(primary)
}

fn amplitudes_at(sol: &WaveSolution, k: f64, i: usize) -> Result<AmplitudePair> {
    let x = sol.grid.node(i);
    let psi = sol.values[i];
    let dpsi = sol.derivatives[i];
    let two_ik = Complex64::new(0.0, 2.0 * k);
    let phase = Complex64::from_polar(1.0, k * x);
    let a = (Complex64::i() * k * psi + dpsi) / two_ik / phase;
    let b = (Complex64::i() * k * psi - dpsi) / two_ik * phase;
    if b.norm() == 0.0 {
        return Err(ScatterError::Inconsistent(format!(
            "vanishing incoming amplitude at k = {k}"
        )));
    }
    Ok(AmplitudePair { a, b, k })
}

/// Numeric S-matrix `-A/B` for an arbitrary potential.
pub fn numeric_smatrix<F>(
    potential: F,
    tag: PotentialTag,
    k: f64,
    spec: &IntegratorSpec,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let sol = integrate(&potential, tag, k, spec)?;
    Ok(extract_amplitudes(&sol, k, spec.x_match)?.s_matrix())
}
