use num_complex::Complex64;

use crate::params::XGrid;

/// Which radial problem a wavefunction solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialTag {
    /// The real singular background potential.
    V0,
    /// The complex partner potential.
    VComplex,
}

/// A radial wavefunction sampled on an x-grid, with values and first
/// derivatives, tagged with its wavenumber and the potential it solves.
#[derive(Debug, Clone)]
pub struct WaveSolution {
    pub k: f64,
    pub grid: XGrid,
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
    pub potential_tag: PotentialTag,
    /// Accumulated log of any overflow renormalizations applied during
    /// integration. Scattering ratios are invariant under this scale.
    pub log_scale: f64,
}

impl WaveSolution {
    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
            && self
                .derivatives
                .iter()
                .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Multiply values and derivatives by a constant. The represented
    /// physical state is unchanged up to normalization.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            k: self.k,
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
            derivatives: self.derivatives.iter().map(|v| v * c).collect(),
            potential_tag: self.potential_tag,
            log_scale: self.log_scale,
        }
    }
}
