use num_complex::Complex64;

use crate::error::{Result, ScatterError};

/// A sampled map k -> real value (cross sections, phase shifts, moduli).
#[derive(Debug, Clone, PartialEq)]
pub struct RealCurve {
    pub k: Vec<f64>,
    pub values: Vec<f64>,
}

impl RealCurve {
    pub fn new(k: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if k.len() != values.len() {
            return Err(ScatterError::InvalidParams(format!(
                "curve length mismatch: {} abscissae vs {} values",
                k.len(),
                values.len()
            )));
        }
        Ok(Self { k, values })
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// Index of the sample closest to `k`.
    pub fn nearest(&self, k: f64) -> usize {
        let mut best = 0;
        let mut dist = f64::INFINITY;
        for (i, &ki) in self.k.iter().enumerate() {
            let d = (ki - k).abs();
            if d < dist {
                dist = d;
                best = i;
            }
        }
        best
    }

    /// Restrict to samples with abscissa in `[k_lo, k_hi]`.
    pub fn window(&self, k_lo: f64, k_hi: f64) -> Self {
        let mut k = Vec::new();
        let mut values = Vec::new();
        for (&ki, &vi) in self.k.iter().zip(&self.values) {
            if ki >= k_lo && ki <= k_hi {
                k.push(ki);
                values.push(vi);
            }
        }
        Self { k, values }
    }
}

/// A sampled map k -> complex value (S-matrices, amplitudes).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexCurve {
    pub k: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl ComplexCurve {
    pub fn new(k: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if k.len() != values.len() {
            return Err(ScatterError::InvalidParams(format!(
                "curve length mismatch: {} abscissae vs {} values",
                k.len(),
                values.len()
            )));
        }
        Ok(Self { k, values })
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }
}
