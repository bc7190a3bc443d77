//! Closed-form k-space objects: the five scattering matrices of the model,
//! every cross section, and the effective-range decomposition with its
//! interference term.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::curve::{ComplexCurve, RealCurve};
use crate::error::{Result, ScatterError};
use crate::params::{KGrid, ModelParams};

fn require_positive_k(k: f64, what: &str) -> Result<()> {
    if !k.is_finite() || k <= 0.0 {
        return Err(ScatterError::Domain(format!(
            "{what} requires k > 0, got {k}"
        )));
    }
    Ok(())
}

/// Background S-matrix `S0(k) = (a1 - ik) / (a1 + ik)`; unimodular.
pub fn s0(k: f64, p: &ModelParams) -> Result<Complex64> {
    require_positive_k(k, "s0")?;
    let a1 = p.a1();
    Ok(Complex64::new(a1, -k) / Complex64::new(a1, k))
}

/// Darboux factor `S~(k) = (d + ib - ik) / (d + ib + ik)`; carries the
/// entire non-unitarity of the complex-potential S-matrix.
pub fn s_tilde(k: f64, p: &ModelParams) -> Result<Complex64> {
    require_positive_k(k, "s_tilde")?;
    Ok(Complex64::new(p.d(), p.b() - k) / Complex64::new(p.d(), p.b() + k))
}

/// S-matrix of the complex (optical) partner potential: `S_H = S0 S~`.
pub fn s_optical(k: f64, p: &ModelParams) -> Result<Complex64> {
    Ok(s0(k, p)? * s_tilde(k, p)?)
}

/// Closed form of `|S_H(k)| = sqrt( [(b-k)^2 + d^2] / [(b+k)^2 + d^2] )`.
pub fn s_optical_abs(k: f64, p: &ModelParams) -> Result<f64> {
    require_positive_k(k, "s_optical_abs")?;
    let (b, d) = (p.b(), p.d());
    Ok((((b - k) * (b - k) + d * d) / ((b + k) * (b + k) + d * d)).sqrt())
}

/// Resonance factor `S_R = S~ sqrt( [(b+k)^2 + d^2] / [(b-k)^2 + d^2] )`
/// with the positive real branch of the square root; unimodular.
///
/// Requires `d < 0`: at the spectral singularity no Hermitian counterpart
/// exists and neither does this matrix.
pub fn s_resonance(k: f64, p: &ModelParams) -> Result<Complex64> {
    p.require_below_singularity("S_R")?;
    require_positive_k(k, "s_resonance")?;
    let (b, d) = (p.b(), p.d());
    let ratio = (((b + k) * (b + k) + d * d) / ((b - k) * (b - k) + d * d)).sqrt();
    Ok(s_tilde(k, p)? * ratio)
}

/// Unitary S-matrix of the Hermitian counterpart: `S_h = S0 S_R`. Equal to
/// the phase factor `S_H / |S_H|`.
pub fn s_hermitian(k: f64, p: &ModelParams) -> Result<Complex64> {
    p.require_below_singularity("S_h")?;
    Ok(s0(k, p)? * s_resonance(k, p)?)
}

/// Breit-Wigner S-matrix `S_BW = S_R^2 = [b^2 + (d-ik)^2] / [b^2 + (d+ik)^2]`.
pub fn s_breit_wigner(k: f64, p: &ModelParams) -> Result<Complex64> {
    p.require_below_singularity("S_BW")?;
    require_positive_k(k, "s_breit_wigner")?;
    let b2 = p.b() * p.b();
    let minus = Complex64::new(p.d(), -k);
    let plus = Complex64::new(p.d(), k);
    Ok((b2 + minus * minus) / (b2 + plus * plus))
}

/// The whole S-matrix family sampled on a momentum grid.
#[derive(Debug, Clone)]
pub struct SMatrixFamily {
    pub k: Vec<f64>,
    pub s0: Vec<Complex64>,
    pub s_tilde: Vec<Complex64>,
    pub s_optical: Vec<Complex64>,
    pub s_resonance: Vec<Complex64>,
    pub s_hermitian: Vec<Complex64>,
    pub s_breit_wigner: Vec<Complex64>,
}

impl SMatrixFamily {
    pub fn compute(grid: &KGrid, p: &ModelParams) -> Result<Self> {
        p.require_below_singularity("S-matrix family")?;
        let n = grid.len();
        let mut fam = Self {
            k: Vec::with_capacity(n),
            s0: Vec::with_capacity(n),
            s_tilde: Vec::with_capacity(n),
            s_optical: Vec::with_capacity(n),
            s_resonance: Vec::with_capacity(n),
            s_hermitian: Vec::with_capacity(n),
            s_breit_wigner: Vec::with_capacity(n),
        };
        for k in grid.iter() {
            let b = s0(k, p)?;
            let t = s_tilde(k, p)?;
            let r = s_resonance(k, p)?;
            fam.k.push(k);
            fam.s0.push(b);
            fam.s_tilde.push(t);
            fam.s_optical.push(b * t);
            fam.s_resonance.push(r);
            fam.s_hermitian.push(b * r);
            fam.s_breit_wigner.push(s_breit_wigner(k, p)?);
        }
        Ok(fam)
    }

    pub fn curve_s0(&self) -> ComplexCurve {
        ComplexCurve {
            k: self.k.clone(),
            values: self.s0.clone(),
        }
    }

    pub fn curve_resonance(&self) -> ComplexCurve {
        ComplexCurve {
            k: self.k.clone(),
            values: self.s_resonance.clone(),
        }
    }

    pub fn curve_hermitian(&self) -> ComplexCurve {
        ComplexCurve {
            k: self.k.clone(),
            values: self.s_hermitian.clone(),
        }
    }

    pub fn curve_breit_wigner(&self) -> ComplexCurve {
        ComplexCurve {
            k: self.k.clone(),
            values: self.s_breit_wigner.clone(),
        }
    }
}

/// Lineshape denominator `sqrt[(k^2 + d^2 - b^2)^2 + 4 b^2 d^2]`.
fn lineshape_denom(k: f64, b: f64, d: f64) -> f64 {
    let q = k * k + d * d - b * b;
    (q * q + 4.0 * b * b * d * d).sqrt()
}

/// Cross section of the square-root lineshape,
/// `sigma_R = (2 pi / k^2) [1 + (k^2 - b^2 - d^2) / sqrt((k^2+d^2-b^2)^2 + 4 b^2 d^2)]`,
/// rearranged so the low-k cancellation never happens:
/// `D^2 - N^2 = 4 d^2 k^2` turns the bracket into `4 d^2 k^2 / (D (D - N))`.
pub fn sigma_res(k: f64, p: &ModelParams) -> Result<f64> {
    p.require_below_singularity("sigma_R")?;
    require_positive_k(k, "sigma_res")?;
    let (b, d) = (p.b(), p.d());
    let n = k * k - b * b - d * d;
    let dd = lineshape_denom(k, b, d);
    if n <= 0.0 {
        Ok(8.0 * PI * d * d / (dd * (dd - n)))
    } else {
        Ok(2.0 * PI / (k * k) * (dd + n) / dd)
    }
}

/// Breit-Wigner cross section, the Lorentzian in energy:
/// `sigma_BW = 16 pi d^2 / [(k^2 + d^2 - b^2)^2 + 4 b^2 d^2]`.
pub fn sigma_bw(k: f64, p: &ModelParams) -> Result<f64> {
    p.require_below_singularity("sigma_BW")?;
    require_positive_k(k, "sigma_bw")?;
    let dd = lineshape_denom(k, p.b(), p.d());
    Ok(16.0 * PI * p.d() * p.d() / (dd * dd))
}

/// Closed-form limit `sigma_R(0+) = 4 pi d^2 / (b^2 + d^2)^2`.
pub fn sigma_res_at_zero(p: &ModelParams) -> f64 {
    let s = p.b() * p.b() + p.d() * p.d();
    4.0 * PI * p.d() * p.d() / (s * s)
}

/// Closed-form limit `sigma_0(0+) = 4 pi / a1^2`.
pub fn sigma0_at_zero(p: &ModelParams) -> f64 {
    4.0 * PI / (p.a1() * p.a1())
}

/// All cross sections of the model on a momentum grid. `sigma_t` is the
/// elementwise sum of `sigma_e` and `sigma_r`.
#[derive(Debug, Clone)]
pub struct CrossSections {
    pub k: Vec<f64>,
    pub sigma0: Vec<f64>,
    pub sigma_e: Vec<f64>,
    pub sigma_r: Vec<f64>,
    pub sigma_t: Vec<f64>,
    pub sigma_h: Vec<f64>,
    pub sigma_res: Vec<f64>,
    pub sigma_bw: Vec<f64>,
}

/// Selector for a single cross-section curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSectionKind {
    Sigma0,
    SigmaE,
    SigmaR,
    SigmaT,
    SigmaH,
    SigmaRes,
    SigmaBw,
}

impl CrossSectionKind {
    /// Column name used in emitted tables.
    pub fn column_name(&self) -> &'static str {
        match self {
            CrossSectionKind::Sigma0 => "sigma0",
            CrossSectionKind::SigmaE => "sigma_e",
            CrossSectionKind::SigmaR => "sigma_r",
            CrossSectionKind::SigmaT => "sigma_t",
            CrossSectionKind::SigmaH => "sigma_h",
            CrossSectionKind::SigmaRes => "sigmaR",
            CrossSectionKind::SigmaBw => "sigmaBW",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "sigma0" => Some(CrossSectionKind::Sigma0),
            "sigma_e" => Some(CrossSectionKind::SigmaE),
            "sigma_r" => Some(CrossSectionKind::SigmaR),
            "sigma_t" => Some(CrossSectionKind::SigmaT),
            "sigma_h" => Some(CrossSectionKind::SigmaH),
            "sigmaR" => Some(CrossSectionKind::SigmaRes),
            "sigmaBW" => Some(CrossSectionKind::SigmaBw),
            _ => None,
        }
    }

    pub const ALL: [CrossSectionKind; 7] = [
        CrossSectionKind::Sigma0,
        CrossSectionKind::SigmaE,
        CrossSectionKind::SigmaR,
        CrossSectionKind::SigmaT,
        CrossSectionKind::SigmaH,
        CrossSectionKind::SigmaRes,
        CrossSectionKind::SigmaBw,
    ];
}

impl CrossSections {
    pub fn values(&self, kind: CrossSectionKind) -> &[f64] {
        match kind {
            CrossSectionKind::Sigma0 => &self.sigma0,
            CrossSectionKind::SigmaE => &self.sigma_e,
            CrossSectionKind::SigmaR => &self.sigma_r,
            CrossSectionKind::SigmaT => &self.sigma_t,
            CrossSectionKind::SigmaH => &self.sigma_h,
            CrossSectionKind::SigmaRes => &self.sigma_res,
            CrossSectionKind::SigmaBw => &self.sigma_bw,
        }
    }

    pub fn curve(&self, kind: CrossSectionKind) -> RealCurve {
        RealCurve {
            k: self.k.clone(),
            values: self.values(kind).to_vec(),
        }
    }
}

/// Fills all seven curves. `sigma_R` from its closed form is cross-checked
/// against `(pi/k^2) |S_R - 1|^2` at every node; a mismatch beyond 1e-10
/// relative is an internal error, not a report entry.
pub fn cross_sections(grid: &KGrid, p: &ModelParams) -> Result<CrossSections> {
    p.require_below_singularity("cross sections")?;
    let n = grid.len();
    let mut cs = CrossSections {
        k: Vec::with_capacity(n),
        sigma0: Vec::with_capacity(n),
        sigma_e: Vec::with_capacity(n),
        sigma_r: Vec::with_capacity(n),
        sigma_t: Vec::with_capacity(n),
        sigma_h: Vec::with_capacity(n),
        sigma_res: Vec::with_capacity(n),
        sigma_bw: Vec::with_capacity(n),
    };
    let a1 = p.a1();
    let (b, d) = (p.b(), p.d());
    for k in grid.iter() {
        let k2 = k * k;
        let pref = PI / k2;
        let sh_opt = s_optical(k, p)?;
        let sh_herm = s_hermitian(k, p)?;
        // 1 - |S_H|^2 = 4 b k / ((b+k)^2 + d^2), exact rearrangement
        let one_minus_abs2 = 4.0 * b * k / ((b + k) * (b + k) + d * d);

        let sigma_e = pref * (sh_opt - 1.0).norm_sqr();
        let sigma_r = pref * one_minus_abs2;
        let sres = sigma_res(k, p)?;
        let cross_check = pref * (s_resonance(k, p)? - 1.0).norm_sqr();
        if (sres - cross_check).abs() > 1e-10 * sres.abs().max(1e-300) {
            return Err(ScatterError::Inconsistent(format!(
                "sigma_R routes disagree at k = {k}: {sres} vs {cross_check}"
            )));
        }

        cs.k.push(k);
        cs.sigma0.push(4.0 * PI / (k2 + a1 * a1));
        cs.sigma_e.push(sigma_e);
        cs.sigma_r.push(sigma_r);
        cs.sigma_t.push(sigma_e + sigma_r);
        cs.sigma_h.push(pref * (sh_herm - 1.0).norm_sqr());
        cs.sigma_res.push(sres);
        cs.sigma_bw.push(sigma_bw(k, p)?);
    }
    Ok(cs)
}

/// Effective-range data: the Breit-Wigner part, the interference term and
/// their sum, with the matching amplitudes.
///
/// `valid[i]` is false where `|S_R - 1| < 1e-3`; the `k cot(delta)` form of
/// the effective-range function is ill-conditioned there and consumers
/// should skip those nodes rather than trust huge values.
#[derive(Debug, Clone)]
pub struct EffectiveRangeData {
    pub k: Vec<f64>,
    pub g_bw: Vec<f64>,
    pub delta: Vec<f64>,
    pub g_r: Vec<f64>,
    pub f_bw: Vec<Complex64>,
    pub f_r: Vec<Complex64>,
    pub valid: Vec<bool>,
}

/// Division guard for the `ik (S+1)/(S-1)` form.
pub const EFFECTIVE_RANGE_GUARD: f64 = 1e-3;

pub fn effective_range(grid: &KGrid, p: &ModelParams) -> Result<EffectiveRangeData> {
    p.require_below_singularity("effective range")?;
    let (b, d) = (p.b(), p.d());
    let n = grid.len();
    let mut out = EffectiveRangeData {
        k: Vec::with_capacity(n),
        g_bw: Vec::with_capacity(n),
        delta: Vec::with_capacity(n),
        g_r: Vec::with_capacity(n),
        f_bw: Vec::with_capacity(n),
        f_r: Vec::with_capacity(n),
        valid: Vec::with_capacity(n),
    };
    for k in grid.iter() {
        let g_bw = (k * k - b * b - d * d) / (2.0 * d);
        let delta = lineshape_denom(k, b, d) / (-2.0 * d);
        let g_r = g_bw + delta;
        let dpik = Complex64::new(d, k);
        let inv_f_bw = (b * b + dpik * dpik) / (-2.0 * d);
        let f_bw = inv_f_bw.inv();
        let inv_f_r = inv_f_bw + delta;
        let f_r = inv_f_r.inv();
        if (g_r - inv_f_r.re).abs() > 1e-10 * (1.0 + g_r.abs()) {
            return Err(ScatterError::Inconsistent(format!(
                "effective-range routes disagree at k = {k}"
            )));
        }
        let s_r = s_resonance(k, p)?;
        out.k.push(k);
        out.g_bw.push(g_bw);
        out.delta.push(delta);
        out.g_r.push(g_r);
        out.f_bw.push(f_bw);
        out.f_r.push(f_r);
        out.valid.push((s_r - 1.0).norm() >= EFFECTIVE_RANGE_GUARD);
    }
    Ok(out)
}
