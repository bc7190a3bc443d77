use num_complex::Complex64;

use crate::error::{Result, ScatterError};

/// Physical parameter set of the model: background stiffness `a1` and the
/// complex shift `a = d + i b` that generates the partner potential.
///
/// All formulas in the crate draw their symbols from here. Units are such
/// that hbar^2 / (2 m) = 1, so every parameter is an inverse length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    a1: f64,
    b: f64,
    d: f64,
}

impl ModelParams {
    /// Strict constructor: `a1 > 0`, `b != 0`, `d < 0`.
    ///
    /// `d = 0` is the spectral-singularity point and is rejected here; use
    /// [`ModelParams::singular_limit`] for diagnostics that only evaluate
    /// modulus-type quantities.
    pub fn new(a1: f64, b: f64, d: f64) -> Result<Self> {
        if !(a1.is_finite() && b.is_finite() && d.is_finite()) {
            return Err(ScatterError::InvalidParams(
                "a1, b, d must be finite".into(),
            ));
        }
        if a1 <= 0.0 {
            return Err(ScatterError::InvalidParams(format!(
                "a1 must be positive, got {a1}"
            )));
        }
        if b == 0.0 {
            return Err(ScatterError::InvalidParams("b must be nonzero".into()));
        }
        if d >= 0.0 {
            return Err(ScatterError::InvalidParams(format!(
                "d must be strictly negative, got {d}"
            )));
        }
        Ok(Self { a1, b, d })
    }

    /// Diagnostics-only parameter set sitting exactly at the spectral
    /// singularity `d = 0`. Quantities that require the Hermitian
    /// counterpart (S_R, S_h, effective range) reject these parameters.
    pub fn singular_limit(a1: f64, b: f64) -> Result<Self> {
        if !(a1.is_finite() && b.is_finite()) {
            return Err(ScatterError::InvalidParams("a1, b must be finite".into()));
        }
        if a1 <= 0.0 {
            return Err(ScatterError::InvalidParams(format!(
                "a1 must be positive, got {a1}"
            )));
        }
        if b == 0.0 {
            return Err(ScatterError::InvalidParams("b must be nonzero".into()));
        }
        Ok(Self { a1, b, d: 0.0 })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// The complex wavenumber shift `a = d + i b`.
    pub fn a(&self) -> Complex64 {
        Complex64::new(self.d, self.b)
    }

    /// Factorization constant `alpha = -a^2`. Off the non-negative real
    /// axis whenever `b != 0` and `d != 0`.
    pub fn alpha(&self) -> Complex64 {
        let a = self.a();
        -a * a
    }

    pub fn at_singular_limit(&self) -> bool {
        self.d == 0.0
    }

    /// Guard for operations that need the Hermitian counterpart to exist.
    pub fn require_below_singularity(&self, op: &'static str) -> Result<()> {
        if self.d < 0.0 {
            Ok(())
        } else {
            Err(ScatterError::SingularLimit(op))
        }
    }
}

/// Uniform grid in the radial coordinate, kept away from the singular
/// origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
    spacing: f64,
}

impl XGrid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min <= 0.0 || x_max <= x_min {
            return Err(ScatterError::InvalidParams(format!(
                "x grid needs 0 < x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < 2 {
            return Err(ScatterError::InvalidParams(format!(
                "x grid needs at least 2 points, got {n}"
            )));
        }
        let spacing = (x_max - x_min) / (n - 1) as f64;
        Ok(Self {
            x_min,
            x_max,
            n,
            spacing,
        })
    }

    /// Default grid for a parameter set: `[1e-3 / a1, 25 / a1]`, long
    /// enough that the exponential tail is below 1e-16 of its peak.
    pub fn for_params(p: &ModelParams, n: usize) -> Result<Self> {
        let g = Self::new(1e-3 / p.a1(), 25.0 / p.a1(), n)?;
        g.check_tail(p.a1())?;
        Ok(g)
    }

    /// The tail requirement `a1 * x_max >= 20`.
    pub fn check_tail(&self, a1: f64) -> Result<()> {
        if a1 * self.x_max < 20.0 {
            return Err(ScatterError::InvalidParams(format!(
                "x_max = {} too short: a1 * x_max must be >= 20",
                self.x_max
            )));
        }
        Ok(())
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn node(&self, i: usize) -> f64 {
        self.x_min + self.spacing * i as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Index of the node closest to `x`.
    pub fn nearest(&self, x: f64) -> usize {
        let i = ((x - self.x_min) / self.spacing).round();
        (i.max(0.0) as usize).min(self.n - 1)
    }
}

/// Uniform momentum grid; `k = 0` is always excluded because the `1/k^2`
/// prefactors of the cross sections are evaluated only at `k > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGrid {
    k_min: f64,
    k_max: f64,
    n: usize,
}

impl KGrid {
    pub fn new(k_min: f64, k_max: f64, n: usize) -> Result<Self> {
        if !(k_min.is_finite() && k_max.is_finite()) || k_min <= 0.0 || k_max <= k_min {
            return Err(ScatterError::InvalidParams(format!(
                "k grid needs 0 < k_min < k_max, got [{k_min}, {k_max}]"
            )));
        }
        if n < 2 {
            return Err(ScatterError::InvalidParams(format!(
                "k grid needs at least 2 points, got {n}"
            )));
        }
        Ok(Self { k_min, k_max, n })
    }

    pub fn k_min(&self) -> f64 {
        self.k_min
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.k_max - self.k_min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.k_min + self.spacing() * i as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.iter().collect()
    }
}

/// Logarithmically spaced momenta, handy for wide oracle scans.
pub fn log_spaced_k(k_min: f64, k_max: f64, n: usize) -> Result<Vec<f64>> {
    if k_min <= 0.0 || k_max <= k_min || n < 2 {
        return Err(ScatterError::InvalidParams(format!(
            "log spacing needs 0 < k_min < k_max and n >= 2, got [{k_min}, {k_max}] n = {n}"
        )));
    }
    let (lo, hi) = (k_min.ln(), k_max.ln());
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| (lo + step * i as f64).exp()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0, 0.5, -0.1).is_err());
        assert!(ModelParams::new(-3.0, 0.5, -0.1).is_err());
        assert!(ModelParams::new(3.0, 0.0, -0.1).is_err());
        assert!(ModelParams::new(3.0, 0.5, 0.0).is_err());
        assert!(ModelParams::new(3.0, 0.5, 0.1).is_err());
        assert!(ModelParams::new(3.0, f64::NAN, -0.1).is_err());
        assert!(ModelParams::new(3.0, 0.5, -0.1).is_ok());
        assert!(ModelParams::new(3.0, -0.5, -0.1).is_ok());
    }

    #[test]
    fn derived_quantities() {
        let p = ModelParams::new(3.0, 0.5, -0.1).unwrap();
        assert_eq!(p.a(), Complex64::new(-0.1, 0.5));
        // alpha = -(d + ib)^2 = (b^2 - d^2) - 2 i d b, off the real axis
        let alpha = p.alpha();
        assert!((alpha.re - 0.24).abs() < 1e-15);
        assert!((alpha.im - 0.1).abs() < 1e-15);
        assert!(alpha.im != 0.0);
    }

    #[test]
    fn singular_limit_params() {
        let p = ModelParams::singular_limit(3.0, 0.5).unwrap();
        assert!(p.at_singular_limit());
        assert!(p.require_below_singularity("S_h").is_err());
        let q = ModelParams::new(3.0, 0.5, -0.1).unwrap();
        assert!(q.require_below_singularity("S_h").is_ok());
    }

    #[test]
    fn xgrid_nodes_uniform_and_increasing() {
        let g = XGrid::new(0.001, 8.0, 101).unwrap();
        let xs: Vec<f64> = g.iter().collect();
        assert_eq!(xs.len(), 101);
        for w in xs.windows(2) {
            assert!((w[1] - w[0] - g.spacing()).abs() < 1e-12);
        }
        assert!(XGrid::new(0.0, 8.0, 101).is_err());
        assert!(XGrid::new(0.5, 0.5, 101).is_err());
    }

    #[test]
    fn xgrid_tail_requirement() {
        let p = ModelParams::new(3.0, 0.5, -0.1).unwrap();
        let g = XGrid::for_params(&p, 2000).unwrap();
        assert!(g.x_max() * 3.0 >= 20.0);
        assert!(XGrid::new(0.01, 4.0, 100).unwrap().check_tail(3.0).is_err());
    }

    #[test]
    fn kgrid_excludes_zero() {
        assert!(KGrid::new(0.0, 3.0, 10).is_err());
        let g = KGrid::new(1e-3, 3.0, 2000).unwrap();
        assert!(g.iter().all(|k| k > 0.0));
        assert_eq!(g.to_vec().len(), 2000);
    }

    #[test]
    fn log_spacing() {
        let ks = log_spaced_k(0.05, 10.0, 20).unwrap();
        assert_eq!(ks.len(), 20);
        assert!((ks[0] - 0.05).abs() < 1e-12);
        assert!((ks[19] - 10.0).abs() < 1e-12);
        let r0 = ks[1] / ks[0];
        for w in ks.windows(2) {
            assert!((w[1] / w[0] - r0).abs() < 1e-10);
        }
    }
}
