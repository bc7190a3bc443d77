//! Scattering toolkit for a complex partner of a singular radial
//! potential.
//!
//! A first-order transformation of the `2 a1^2 / sinh^2(a1 x)` background
//! produces an exactly solvable complex potential whose non-unitary
//! S-matrix factors into the background matrix and a Darboux factor. The
//! phase of that S-matrix is itself the unitary S-matrix of an equivalent
//! Hermitian problem, and it is the square root of a Breit-Wigner matrix
//! times the background — so driving the imaginary shift `d` towards zero
//! sharpens a genuine resonance in the Hermitian cross section.
//!
//! The crate provides:
//!
//! - [`xspace`]: the closed-form potentials, states, superpotential and
//!   the first-order map between the two problems;
//! - [`smatrix`]: the full S-matrix family, every cross section and the
//!   effective-range decomposition with its interference term;
//! - [`phase`]: continuous phase shifts of unimodular S-matrices;
//! - [`oracle`]: an independent fixed-step radial-ODE solver (Numerov,
//!   with a Runge-Kutta cross-check) that re-derives every S-matrix by
//!   asymptotic matching, plus the identity verification gate;
//! - [`resonance`]: peak detection, width extraction and proximity
//!   sweeps in `d`.

pub mod curve;
pub mod error;
pub mod oracle;
pub mod params;
pub mod phase;
pub mod resonance;
pub mod smatrix;
pub mod wave;
pub mod xspace;

pub use curve::{ComplexCurve, RealCurve};
pub use error::{ErrorCategory, Result, ScatterError};
pub use oracle::{AmplitudePair, IntegratorSpec, Method, VerifyItem, VerifyReport};
pub use params::{log_spaced_k, KGrid, ModelParams, XGrid};
pub use resonance::{NoResonanceReport, ResonanceFit, SweepRow};
pub use smatrix::{CrossSectionKind, CrossSections, EffectiveRangeData, SMatrixFamily};
pub use wave::{PotentialTag, WaveSolution};
