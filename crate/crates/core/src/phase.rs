//! Phase shifts of unimodular S-matrices: `S = exp(2 i delta)` determines
//! `delta` modulo pi at each sample, so the curve is unwrapped along the
//! grid and anchored at the low-momentum end, where every phase in this
//! model tends to zero.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::curve::{ComplexCurve, RealCurve};
use crate::error::{Result, ScatterError};

/// Modulus tolerance for accepting a sample as unimodular.
pub const UNIMODULAR_TOL: f64 = 1e-9;

/// Jump threshold: successive unwrapped phases must differ by less than
/// pi/2 or the branch choice is ambiguous.
const JUMP_LIMIT: f64 = FRAC_PI_2 - 1e-6;

/// Extracts the continuous phase shift `delta(k) = log(S) / 2i` from a
/// sampled unimodular S-matrix.
///
/// The first sample is taken in `(-pi/2, pi/2]`; every following sample is
/// moved by the multiple of pi nearest to its predecessor. Inputs with
/// `||S| - 1| > 1e-9` are rejected, as are neighbor jumps of pi/2 or more
/// (a grid too coarse to track the phase).
pub fn phase_shift(curve: &ComplexCurve) -> Result<RealCurve> {
    if curve.len() < 2 {
        return Err(ScatterError::Domain(
            "phase unwrapping needs at least 2 samples".into(),
        ));
    }
    let mut out = Vec::with_capacity(curve.len());
    let mut prev = 0.0;
    for (i, (&k, &s)) in curve.k.iter().zip(&curve.values).enumerate() {
        let modulus = s.norm();
        if (modulus - 1.0).abs() > UNIMODULAR_TOL {
            return Err(ScatterError::NonUnimodular { k, modulus });
        }
        // principal value in (-pi/2, pi/2]
        let mut delta = s.arg() / 2.0;
        if delta <= -FRAC_PI_2 {
            delta += PI;
        }
        if i == 0 {
            prev = delta;
            out.push(delta);
            continue;
        }
        let shift = ((prev - delta) / PI).round();
        let unwrapped = delta + shift * PI;
        let jump = (unwrapped - prev).abs();
        if jump >= JUMP_LIMIT {
            return Err(ScatterError::GridTooCoarse { k, jump });
        }
        prev = unwrapped;
        out.push(unwrapped);
    }
    RealCurve::new(curve.k.clone(), out)
}

/// Central-difference slope of a sampled curve at the node nearest `k`.
/// Falls back to one-sided differences at the ends.
pub fn slope_at(curve: &RealCurve, k: f64) -> Result<f64> {
    if curve.len() < 3 {
        return Err(ScatterError::Domain(
            "slope needs at least 3 samples".into(),
        ));
    }
    let i = curve.nearest(k).clamp(1, curve.len() - 2);
    let dk = curve.k[i + 1] - curve.k[i - 1];
    if dk == 0.0 {
        return Err(ScatterError::Domain("degenerate abscissae".into()));
    }
    Ok((curve.values[i + 1] - curve.values[i - 1]) / dk)
}

/// Same slope but with respect to energy E = k^2.
pub fn slope_in_energy_at(curve: &RealCurve, e: f64) -> Result<f64> {
    if curve.len() < 3 {
        return Err(ScatterError::Domain(
            "slope needs at least 3 samples".into(),
        ));
    }
    let mut best = 1;
    let mut dist = f64::INFINITY;
    for i in 1..curve.len() - 1 {
        let d = (curve.k[i] * curve.k[i] - e).abs();
        if d < dist {
            dist = d;
            best = i;
        }
    }
    let de = curve.k[best + 1] * curve.k[best + 1] - curve.k[best - 1] * curve.k[best - 1];
    if de == 0.0 {
        return Err(ScatterError::Domain("degenerate abscissae".into()));
    }
    Ok((curve.values[best + 1] - curve.values[best - 1]) / de)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{KGrid, ModelParams};
    use crate::smatrix;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn toy() -> ModelParams {
        ModelParams::new(3.0, 0.5, -0.1).unwrap()
    }

    fn grid() -> KGrid {
        KGrid::new(1e-3, 3.0, 2000).unwrap()
    }

    fn curve_of(f: impl Fn(f64) -> Complex64, g: &KGrid) -> ComplexCurve {
        let k: Vec<f64> = g.to_vec();
        let values = k.iter().map(|&ki| f(ki)).collect();
        ComplexCurve { k, values }
    }

    #[test]
    fn background_phase_is_minus_arctan() {
        let p = toy();
        let c = curve_of(|k| smatrix::s0(k, &p).unwrap(), &grid());
        let d = phase_shift(&c).unwrap();
        for (&k, &v) in d.k.iter().zip(&d.values) {
            assert_relative_eq!(v, -(k / 3.0).atan(), epsilon = 1e-12);
        }
        // delta0(a1) = -pi/4
        let ga = KGrid::new(0.1, 3.0, 30).unwrap();
        let da = phase_shift(&curve_of(|k| smatrix::s0(k, &p).unwrap(), &ga)).unwrap();
        assert_relative_eq!(*da.values.last().unwrap(), -PI / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn breit_wigner_phase_is_twice_resonance_phase() {
        let p = toy();
        let g = grid();
        let dr = phase_shift(&curve_of(|k| smatrix::s_resonance(k, &p).unwrap(), &g)).unwrap();
        let dbw = phase_shift(&curve_of(|k| smatrix::s_breit_wigner(k, &p).unwrap(), &g)).unwrap();
        for i in 0..g.len() {
            assert!((dbw.values[i] - 2.0 * dr.values[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn resonance_phase_rise_across_window() {
        let p = toy();
        let g = grid();
        let dr = phase_shift(&curve_of(|k| smatrix::s_resonance(k, &p).unwrap(), &g)).unwrap();
        let lo = dr.nearest(0.5 - 0.5);
        let hi = dr.nearest(0.5 + 0.5);
        let rise_r = dr.values[hi] - dr.values[lo];
        // the full Breit-Wigner phase rises by about pi over the window,
        // the square-root lineshape by half of that
        assert!(
            rise_r > 0.85 * FRAC_PI_2 && rise_r <= FRAC_PI_2,
            "rise {rise_r}"
        );
        let dbw = phase_shift(&curve_of(|k| smatrix::s_breit_wigner(k, &p).unwrap(), &g)).unwrap();
        let rise_bw = dbw.values[hi] - dbw.values[lo];
        assert_relative_eq!(rise_bw, 2.0 * rise_r, epsilon = 1e-9);
    }

    #[test]
    fn resonance_phase_slope_matches_width() {
        let p = toy();
        let dr = phase_shift(&curve_of(|k| smatrix::s_resonance(k, &p).unwrap(), &grid())).unwrap();
        let slope = slope_in_energy_at(&dr, 0.24).unwrap();
        // 1/Gamma = 1/(4 b |d|) = 5 within 5%
        assert!((slope * 0.2 - 1.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn rejects_non_unimodular_input() {
        let p = toy();
        let c = curve_of(|k| smatrix::s_optical(k, &p).unwrap(), &grid());
        assert!(matches!(
            phase_shift(&c),
            Err(ScatterError::NonUnimodular { .. })
        ));
    }

    #[test]
    fn rejects_ambiguous_jump() {
        let c = ComplexCurve {
            k: vec![1.0, 1.001],
            values: vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 1e-12)],
        };
        assert!(matches!(
            phase_shift(&c),
            Err(ScatterError::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn anchor_is_near_zero_at_low_k() {
        let p = toy();
        let dh = phase_shift(&curve_of(|k| smatrix::s_hermitian(k, &p).unwrap(), &grid())).unwrap();
        assert!(dh.values[0].abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn unwraps_linear_phase(slope in 0.05..70.0f64) {
            // S = exp(2 i slope k) sampled densely enough
            let g = KGrid::new(0.01, 3.0, 600).unwrap();
            let c = ComplexCurve {
                k: g.to_vec(),
                values: g.iter().map(|k| Complex64::from_polar(1.0, 2.0 * slope * k)).collect(),
            };
            if slope * (g.spacing()) < FRAC_PI_2 - 1e-3 {
                let d = phase_shift(&c).unwrap();
                for (&k, &v) in d.k.iter().zip(&d.values) {
                    // continuous representative of slope*k modulo the pi anchor
                    let expect = slope * k - (slope * d.k[0] / PI).round() * PI;
                    prop_assert!((v - expect).abs() < 1e-9);
                }
            }
        }
    }
}
