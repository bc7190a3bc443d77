//! Closed-form x-space objects of the model: the singular background
//! potential, its scattering states, the transformation (Jost) function,
//! the superpotential, the complex partner potential and the first-order
//! map between the two eigenproblems.
//!
//! Hyperbolic functions are evaluated through `e^{-2 a1 x}` so every
//! expression stays finite for arbitrarily large `x`.

use num_complex::Complex64;

use crate::error::{Result, ScatterError};
use crate::params::ModelParams;
use crate::wave::{PotentialTag, WaveSolution};

fn require_positive_x(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(ScatterError::Domain(format!(
            "{what} requires x > 0, got {x}"
        )));
    }
    Ok(())
}

/// Scaled hyperbolics at z = a1 x: (e^{-2z}, sinh(z) e^{-z}, cosh(z) e^{-z}).
fn scaled_hyp(z: f64) -> (f64, f64, f64) {
    let em2 = (-2.0 * z).exp();
    let s1 = -(-2.0 * z).exp_m1() / 2.0;
    let c1 = (1.0 + em2) / 2.0;
    (em2, s1, c1)
}

/// Background potential `v0(x) = 2 a1^2 / sinh^2(a1 x)`, singular at the
/// origin with strength nu = 1.
pub fn v0(x: f64, p: &ModelParams) -> Result<f64> {
    require_positive_x(x, "v0")?;
    let (em2, s1, _) = scaled_hyp(p.a1() * x);
    Ok(2.0 * p.a1() * p.a1() * em2 / (s1 * s1))
}

/// Unnormalized regular scattering state of the background problem:
/// `a1 coth(a1 x) sin(k x) - k cos(k x)`. Vanishes as x^2 at the origin.
pub fn psi0(k: f64, x: f64, p: &ModelParams) -> Result<f64> {
    require_positive_x(x, "psi0")?;
    if !k.is_finite() || k <= 0.0 {
        return Err(ScatterError::Domain(format!(
            "psi0 requires k > 0, got {k}"
        )));
    }
    let (_, s1, c1) = scaled_hyp(p.a1() * x);
    Ok(p.a1() * (c1 / s1) * (k * x).sin() - k * (k * x).cos())
}

/// d/dx of [`psi0`].
pub fn psi0_deriv(k: f64, x: f64, p: &ModelParams) -> Result<f64> {
    require_positive_x(x, "psi0_deriv")?;
    if !k.is_finite() || k <= 0.0 {
        return Err(ScatterError::Domain(format!(
            "psi0_deriv requires k > 0, got {k}"
        )));
    }
    let a1 = p.a1();
    let (em2, s1, c1) = scaled_hyp(a1 * x);
    let (sin, cos) = (k * x).sin_cos();
    Ok(-a1 * a1 * em2 / (s1 * s1) * sin + a1 * (c1 / s1) * k * cos + k * k * sin)
}

/// Transformation function `u(x) = exp(a x) (a1 coth(a1 x) - a)`: the Jost
/// solution of the background problem at the factorization energy.
/// Nonvanishing on (0, inf) for every valid parameter set.
pub fn jost_u(x: f64, p: &ModelParams) -> Result<Complex64> {
    require_positive_x(x, "jost_u")?;
    let (_, s1, c1) = scaled_hyp(p.a1() * x);
    let bracket = Complex64::new(p.a1() * c1 / s1, 0.0) - p.a();
    Ok((p.a() * x).exp() * bracket)
}

/// Superpotential `w = u'/u` in closed form:
/// `w(x) = a - a1^2 / ( sinh(a1 x) [a1 cosh(a1 x) - a sinh(a1 x)] )`.
pub fn superpotential_w(x: f64, p: &ModelParams) -> Result<Complex64> {
    require_positive_x(x, "superpotential_w")?;
    let a1 = p.a1();
    let (em2, s1, c1) = scaled_hyp(a1 * x);
    let m1 = Complex64::new(a1 * c1, 0.0) - p.a() * s1;
    Ok(p.a() - a1 * a1 * em2 / (s1 * m1))
}

/// d/dx of the superpotential, in closed form (no finite differences):
/// `w'(x) = a1^3 [a1 cosh(2 a1 x) - a sinh(2 a1 x)] / D^2` with
/// `D = sinh(a1 x) [a1 cosh(a1 x) - a sinh(a1 x)]`.
pub fn superpotential_w_deriv(x: f64, p: &ModelParams) -> Result<Complex64> {
    require_positive_x(x, "superpotential_w_deriv")?;
    let a1 = p.a1();
    let a = p.a();
    let (em2, s1, c1) = scaled_hyp(a1 * x);
    let m1 = Complex64::new(a1 * c1, 0.0) - a * s1;
    let n1 = a1.powi(3)
        * ((Complex64::new(a1, 0.0) - a) / 2.0 + (Complex64::new(a1, 0.0) + a) * (em2 * em2) / 2.0);
    Ok(n1 * em2 / (s1 * s1 * m1 * m1))
}

/// Complex partner potential
/// `V(x) = 2 a1^2 (a^2 - a1^2) / [a1 cosh(a1 x) - a sinh(a1 x)]^2`.
///
/// Finite at the origin (the map lowers the singularity strength by one),
/// so `x = 0` is allowed.
pub fn potential_v(x: f64, p: &ModelParams) -> Result<Complex64> {
    if !x.is_finite() || x < 0.0 {
        return Err(ScatterError::Domain(format!(
            "potential_v requires x >= 0, got {x}"
        )));
    }
    let a1 = p.a1();
    let a = p.a();
    let (em2, s1, c1) = scaled_hyp(a1 * x);
    let m1 = Complex64::new(a1 * c1, 0.0) - a * s1;
    Ok(2.0 * a1 * a1 * (a * a - a1 * a1) * em2 / (m1 * m1))
}

/// Eigenfunction of the partner problem at the factorization energy:
/// `phi = 1/u`. Satisfies the Dirichlet condition at the origin and grows
/// like `exp(-a x)` (i.e. `exp(|d| x)` in modulus) at infinity.
pub fn phi_at_alpha(x: f64, p: &ModelParams) -> Result<Complex64> {
    Ok(jost_u(x, p)?.inv())
}

/// Builds the closed-form background state on a grid as a [`WaveSolution`].
pub fn psi0_solution(k: f64, grid: crate::params::XGrid, p: &ModelParams) -> Result<WaveSolution> {
    let mut values = Vec::with_capacity(grid.len());
    let mut derivatives = Vec::with_capacity(grid.len());
    for x in grid.iter() {
        values.push(Complex64::new(psi0(k, x, p)?, 0.0));
        derivatives.push(Complex64::new(psi0_deriv(k, x, p)?, 0.0));
    }
    Ok(WaveSolution {
        k,
        grid,
        values,
        derivatives,
        potential_tag: PotentialTag::V0,
        log_scale: 0.0,
    })
}

/// Residual tolerance for the input state of [`darboux_map`].
pub const DARBOUX_INPUT_TOL: f64 = 1e-4;

/// Applies the first-order map `phi = -psi' + w psi` to a background
/// solution, producing a partner solution at the same energy. The
/// normalization factor `(k^2 - alpha)^{-1/2}` is deliberately dropped:
/// only amplitude ratios matter for scattering.
pub fn darboux_map(psi: &WaveSolution, p: &ModelParams) -> Result<WaveSolution> {
    if psi.potential_tag != PotentialTag::V0 {
        return Err(ScatterError::Precondition(
            "darboux_map expects a background (V0) solution".into(),
        ));
    }
    let residual = background_residual(psi, p)?;
    if residual > DARBOUX_INPUT_TOL {
        return Err(ScatterError::Precondition(format!(
            "input does not solve the background problem: residual {residual:e} > {DARBOUX_INPUT_TOL:e}"
        )));
    }

    let k2 = psi.k * psi.k;
    let n = psi.grid.len();
    let mut values = Vec::with_capacity(n);
    let mut derivatives = Vec::with_capacity(n);
    for (i, x) in psi.grid.iter().enumerate() {
        let w = superpotential_w(x, p)?;
        let wp = superpotential_w_deriv(x, p)?;
        let v = v0(x, p)?;
        let psi_v = psi.values[i];
        let psi_d = psi.derivatives[i];
        // psi'' from the equation the input was just checked against
        let psi_dd = (v - k2) * psi_v;
        values.push(-psi_d + w * psi_v);
        derivatives.push(-psi_dd + wp * psi_v + w * psi_d);
    }
    Ok(WaveSolution {
        k: psi.k,
        grid: psi.grid,
        values,
        derivatives,
        potential_tag: PotentialTag::VComplex,
        log_scale: psi.log_scale,
    })
}

/// Max normalized residual `|-psi'' + v0 psi - k^2 psi| / max|psi|` over
/// interior grid nodes with x >= 0.1, second derivative by 5-point
/// differences of the stored values.
pub fn background_residual(psi: &WaveSolution, p: &ModelParams) -> Result<f64> {
    let n = psi.grid.len();
    if n < 5 {
        return Err(ScatterError::Precondition(
            "need at least 5 grid nodes for a residual check".into(),
        ));
    }
    let h = psi.grid.spacing();
    let scale = psi.max_abs();
    if scale <= 0.0 || !scale.is_finite() {
        return Err(ScatterError::Precondition("input state is zero".into()));
    }
    let k2 = psi.k * psi.k;
    let mut worst: f64 = 0.0;
    for i in 2..n - 2 {
        let x = psi.grid.node(i);
        if x < 0.1 {
            continue;
        }
        let dd = (-psi.values[i + 2] + 16.0 * psi.values[i + 1] - 30.0 * psi.values[i]
            + 16.0 * psi.values[i - 1]
            - psi.values[i - 2])
            / (12.0 * h * h);
        let r = (-dd + (v0(x, p)? - k2) * psi.values[i]).norm();
        worst = worst.max(r / scale);
    }
    Ok(worst)
}

/// Scans the transformation function on a grid and errors on any zero
/// crossing. `|u(x)| e^{-d x} >= |b|` holds analytically; a violation
/// signals corrupted arithmetic, not bad input.
pub fn assert_u_nonvanishing(grid: &crate::params::XGrid, p: &ModelParams) -> Result<f64> {
    let mut min_norm = f64::INFINITY;
    for x in grid.iter() {
        let (_, s1, c1) = scaled_hyp(p.a1() * x);
        let bracket = Complex64::new(p.a1() * c1 / s1, 0.0) - p.a();
        min_norm = min_norm.min(bracket.norm());
    }
    if min_norm < 0.5 * p.b().abs() {
        return Err(ScatterError::Inconsistent(format!(
            "transformation function approaches zero: min |a1 coth - a| = {min_norm:e}"
        )));
    }
    Ok(min_norm)
}
