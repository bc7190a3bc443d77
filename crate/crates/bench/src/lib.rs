//! Benchmark-only crate; see `benches/scattering.rs`.

/// Toy parameters shared by the benchmarks.
pub fn toy_params() -> susyscat_core::ModelParams {
    susyscat_core::ModelParams::new(3.0, 0.5, -0.1).expect("valid toy parameters")
}
