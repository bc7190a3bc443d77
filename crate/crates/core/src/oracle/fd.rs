//! Five-point finite-difference stencils (fourth order). These are the
//! verification side of every dual-route identity in the crate: closed-form
//! derivatives are never used to check themselves.

use num_complex::Complex64;

/// First derivative of a directly evaluable function.
pub fn deriv1<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Second derivative of a directly evaluable function.
pub fn deriv2<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// First derivatives of uniformly sampled values, one-sided at the ends.
pub fn sample_derivatives(values: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = values.len();
    assert!(n >= 5, "need at least 5 samples for 5-point stencils");
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i < 2 {
            forward5(&values[0..5], i, h)
        } else if i >= n - 2 {
            // mirrored stencil on the last five samples
            -forward5_rev(&values[n - 5..n], n - 1 - i, h)
        } else {
            (-values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] + values[i - 2])
                / (12.0 * h)
        };
        out.push(d);
    }
    out
}

fn forward5(v: &[Complex64], at: usize, h: f64) -> Complex64 {
    match at {
        0 => (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h),
        1 => (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h),
        _ => unreachable!(),
    }
}

fn forward5_rev(v: &[Complex64], from_end: usize, h: f64) -> Complex64 {
    let r: Vec<Complex64> = v.iter().rev().copied().collect();
    forward5(&r, from_end, h)
}

/// Second derivative at an interior sample index.
pub fn sample_deriv2(values: &[Complex64], i: usize, h: f64) -> Complex64 {
    (-values[i + 2] + 16.0 * values[i + 1] - 30.0 * values[i] + 16.0 * values[i - 1]
        - values[i - 2])
        / (12.0 * h * h)
}
