//! Resonance phenomenology: peak detection, width extraction from the
//! half-maximum crossings, proximity sweeps in the imaginary shift d and
//! the smoothness check used to show that the complex-potential cross
//! sections carry no resonance of their own.

use serde::Serialize;

use crate::curve::RealCurve;
use crate::error::{Result, ScatterError};
use crate::params::{KGrid, ModelParams};
use crate::phase::{phase_shift, slope_at};
use crate::smatrix::{self, CrossSectionKind};

/// Peak location, height and implied Breit-Wigner parameters of a
/// cross-section curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResonanceFit {
    pub k_peak: f64,
    pub sigma_peak: f64,
    pub e_peak: f64,
    /// Full width at half maximum, measured in energy.
    pub half_width_e: f64,
    pub e0_implied: f64,
    pub gamma_implied: f64,
}

/// One row of a proximity sweep in d.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub d: f64,
    pub k_peak: f64,
    pub sigma_peak: f64,
    /// Full width at half maximum in energy, when both crossings lie
    /// inside the grid; wide resonances may not bracket.
    pub width: Option<f64>,
    pub s_h_abs_at_b: f64,
    pub phase_slope_at_b: f64,
}

/// Minimum number of samples [`find_peak`] accepts.
pub const MIN_PEAK_SAMPLES: usize = 50;

/// A local maximum is called a resonance when it exceeds the larger
/// neighboring local minimum by this factor.
pub const PROMINENCE_THRESHOLD: f64 = 1.05;

/// Discrete argmax plus parabolic refinement through the three samples
/// around it. Errors when the maximum sits on the boundary.
pub fn find_peak(curve: &RealCurve) -> Result<(f64, f64)> {
    if curve.len() < MIN_PEAK_SAMPLES {
        return Err(ScatterError::Precondition(format!(
            "peak search needs at least {MIN_PEAK_SAMPLES} samples, got {}",
            curve.len()
        )));
    }
    let i = argmax(&curve.values);
    if i == 0 || i == curve.len() - 1 {
        return Err(ScatterError::NoInteriorPeak);
    }
    Ok(refine_parabolic(curve, i))
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

fn refine_parabolic(curve: &RealCurve, i: usize) -> (f64, f64) {
    let (y1, y2, y3) = (curve.values[i - 1], curve.values[i], curve.values[i + 1]);
    let h = curve.k[i + 1] - curve.k[i];
    let denom = y1 - 2.0 * y2 + y3;
    if denom >= 0.0 {
        // flat or degenerate neighborhood; keep the grid point
        return (curve.k[i], y2);
    }
    let dk = 0.5 * h * (y1 - y3) / denom;
    let c1 = (y3 - y1) / 2.0;
    let c2 = denom / 2.0;
    (curve.k[i] + dk, y2 - c1 * c1 / (4.0 * c2))
}

/// Half-maximum crossing on one side of the peak, linearly interpolated in
/// energy E = k^2. `dir` is -1 for the left flank, +1 for the right.
fn half_crossing(curve: &RealCurve, i_peak: usize, half: f64, dir: i64) -> Option<(f64, usize)> {
    let mut i = i_peak as i64;
    loop {
        let next = i + dir;
        if next < 0 || next as usize >= curve.len() {
            return None;
        }
        if curve.values[next as usize] < half {
            let (ia, ib) = (next as usize, i as usize);
            let (ea, eb) = (curve.k[ia] * curve.k[ia], curve.k[ib] * curve.k[ib]);
            let (ya, yb) = (curve.values[ia], curve.values[ib]);
            let e = ea + (half - ya) * (eb - ea) / (yb - ya);
            return Some((e, next as usize));
        }
        i = next;
    }
}

/// FWHM extraction: the implied resonance energy is the refined peak
/// position and the implied width is the distance in energy between the
/// two half-maximum crossings, each found by linear interpolation.
/// No nonlinear fitting is involved; the inputs are noise-free curves.
pub fn fit_breit_wigner(curve: &RealCurve) -> Result<ResonanceFit> {
    let (k_peak, sigma_peak) = find_peak(curve)?;
    let i_peak = argmax(&curve.values);
    let half = sigma_peak / 2.0;

    let (e_left, i_left) = half_crossing(curve, i_peak, half, -1).ok_or_else(|| {
        ScatterError::HalfMaxWindow("half maximum not bracketed on the left".into())
    })?;
    let (e_right, i_right) = half_crossing(curve, i_peak, half, 1).ok_or_else(|| {
        ScatterError::HalfMaxWindow("half maximum not bracketed on the right".into())
    })?;

    let inside = i_right.saturating_sub(i_left + 1);
    if inside < 10 {
        return Err(ScatterError::HalfMaxWindow(format!(
            "only {inside} samples inside the half-maximum window, need 10"
        )));
    }

    let e_peak = k_peak * k_peak;
    let width = e_right - e_left;
    Ok(ResonanceFit {
        k_peak,
        sigma_peak,
        e_peak,
        half_width_e: width,
        e0_implied: e_peak,
        gamma_implied: width,
    })
}

/// Worst prominence ratio over interior local maxima of the curve
/// restricted to `[k_lo, k_hi]`: peak value over the larger of the two
/// neighboring local minima (window edges count as minima). Returns 1.0
/// when the restriction has no interior local maximum.
pub fn prominence_ratio(curve: &RealCurve, k_lo: f64, k_hi: f64) -> f64 {
    let w = curve.window(k_lo, k_hi);
    let v = &w.values;
    let n = v.len();
    let mut worst = 1.0f64;
    for i in 1..n.saturating_sub(1) {
        if v[i] > v[i - 1] && v[i] > v[i + 1] {
            let mut j = i;
            while j > 0 && v[j - 1] <= v[j] {
                j -= 1;
            }
            let left = v[j];
            let mut j = i;
            while j + 1 < n && v[j + 1] <= v[j] {
                j += 1;
            }
            let right = v[j];
            let floor = left.max(right);
            let ratio = if floor > 0.0 {
                v[i] / floor
            } else {
                f64::INFINITY
            };
            worst = worst.max(ratio);
        }
    }
    worst
}

#[derive(Debug, Clone, Serialize)]
pub struct ProminenceItem {
    pub curve: String,
    pub worst_ratio: f64,
    pub resonant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NoResonanceReport {
    pub items: Vec<ProminenceItem>,
    pub passed: bool,
}

/// Window of the smoothness criterion.
pub const NO_RESONANCE_WINDOW: (f64, f64) = (0.3, 1.5);

/// Checks that the elastic, reaction and total cross sections of the
/// complex potential have no interior peak on k in [0.3, 1.5] under the
/// 1.05x prominence criterion.
pub fn no_resonance_check(p: &ModelParams, grid: &KGrid) -> Result<NoResonanceReport> {
    let cs = smatrix::cross_sections(grid, p)?;
    let (lo, hi) = NO_RESONANCE_WINDOW;
    let mut items = Vec::new();
    let mut passed = true;
    for kind in [
        CrossSectionKind::SigmaE,
        CrossSectionKind::SigmaR,
        CrossSectionKind::SigmaT,
    ] {
        let ratio = prominence_ratio(&cs.curve(kind), lo, hi);
        let resonant = ratio > PROMINENCE_THRESHOLD;
        passed &= !resonant;
        items.push(ProminenceItem {
            curve: kind.column_name().to_string(),
            worst_ratio: ratio,
            resonant,
        });
    }
    Ok(NoResonanceReport { items, passed })
}

/// Proximity sweep: for each d, the peak statistics of sigma_h, the
/// modulus of the complex-potential S-matrix at k = b, and the slope of the
/// unwrapped phase shift of S_h at k = b.
pub fn singularity_sweep(
    d_values: &[f64],
    p_base: &ModelParams,
    grid: &KGrid,
) -> Result<Vec<SweepRow>> {
    for &d in d_values {
        if !d.is_finite() || d >= 0.0 {
            return Err(ScatterError::InvalidParams(format!(
                "sweep requires d < 0, got {d}"
            )));
        }
    }
    let mut rows = Vec::with_capacity(d_values.len());
    for &d in d_values {
        let p = ModelParams::new(p_base.a1(), p_base.b(), d)?;
        let cs = smatrix::cross_sections(grid, &p)?;
        let curve = cs.curve(CrossSectionKind::SigmaH);

        let i = argmax(&curve.values);
        let (k_peak, sigma_peak) = if i > 0 && i < curve.len() - 1 {
            refine_parabolic(&curve, i)
        } else {
            (curve.k[i], curve.values[i])
        };
        let width = match fit_breit_wigner(&curve) {
            Ok(fit) => Some(fit.half_width_e),
            Err(ScatterError::HalfMaxWindow(_)) | Err(ScatterError::NoInteriorPeak) => None,
            Err(e) => return Err(e),
        };

        let b_abs = p.b().abs();
        let fam = smatrix::SMatrixFamily::compute(grid, &p)?;
        let delta_h = phase_shift(&fam.curve_hermitian())?;
        rows.push(SweepRow {
            d,
            k_peak,
            sigma_peak,
            width,
            s_h_abs_at_b: smatrix::s_optical_abs(b_abs, &p)?,
            phase_slope_at_b: slope_at(&delta_h, b_abs)?,
        });
    }
    Ok(rows)
}
