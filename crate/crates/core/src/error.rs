use thiserror::Error;

/// Errors produced by the scattering toolkit.
#[derive(Debug, Clone, Error)]
pub enum ScatterError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The metric connecting the complex potential to its Hermitian
    /// counterpart does not exist at d = 0; unitary S-matrix quantities
    /// are undefined there.
    #[error("singular limit d = 0: {0} is not defined at the spectral singularity")]
    SingularLimit(&'static str),

    #[error("non-unimodular S-matrix sample at k = {k}: |S| = {modulus}")]
    NonUnimodular { k: f64, modulus: f64 },

    #[error("phase grid too coarse at k = {k}: unwrapped jump {jump} rad")]
    GridTooCoarse { k: f64, jump: f64 },

    #[error("curve has no interior maximum")]
    NoInteriorPeak,

    #[error("half-maximum window error: {0}")]
    HalfMaxWindow(String),

    #[error(
        "asymptotic matching window at k = {k}: extraction mismatch {mismatch:e} exceeds {tol:e}"
    )]
    MatchingWindow { k: f64, mismatch: f64, tol: f64 },

    #[error("integrator spec: {0}")]
    InvalidIntegratorSpec(String),

    #[error("potential tail not asymptotic at x_match = {x_match}: |V| = {magnitude:e} exceeds {threshold:e}")]
    TailNotAsymptotic {
        x_match: f64,
        magnitude: f64,
        threshold: f64,
    },

    #[error("integration failure: {0}")]
    IntegrationFailure(String),

    /// An internal identity that must hold for valid inputs failed,
    /// e.g. a zero crossing of the transformation function.
    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Broad failure categories, used by callers that map errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parameters,
    Numerical,
}

impl ScatterError {
    pub fn category(&self) -> ErrorCategory {
        match self {
            ScatterError::InvalidParams(_)
            | ScatterError::Domain(_)
            | ScatterError::SingularLimit(_) => ErrorCategory::Parameters,
            _ => ErrorCategory::Numerical,
        }
    }
}

pub type Result<T> = std::result::Result<T, ScatterError>;
