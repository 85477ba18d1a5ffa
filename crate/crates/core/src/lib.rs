//! Spectral analysis of the dual radial Hamiltonians on the plane.
//!
//! Two families of radial operators are covered:
//!
//! * oscillator-like `ȟ_m = −∂²_u + u⁻²(m² − 1/4) + λu²`,
//! * Coulomb-like `ȟ_m = −∂²_x + (2x)⁻²(m² − 1) + g/x`,
//!
//! including every self-adjoint extension family at the singular origin,
//! closed-form spectra with weights, spectral densities, Green functions,
//! normalized eigenfunctions, the exact change of variables relating the
//! two theories, and an independent finite-difference/shooting oracle.

pub mod error;
pub mod specfun;
pub mod model;
pub mod oscillator;
pub mod coulomb;
pub mod duality;
pub mod oracle;
pub mod quad;
mod roots;

pub use error::{Error, Result};
pub use model::{
    canonicalize_zeta, classify, sample_measure, AsymptoticClass, ComplexEnergy, ExtensionParam, MeasureSample,
    ProblemSpec, RadialWave, RegimeClass, SpectralMeasure, Support, Theory, Atom, DiscreteCount, Selector, Sign,
};
pub use num_complex::Complex64;

/// Spectral measure of either theory (at most `levels` discrete points).
pub fn spectrum(spec: &ProblemSpec, levels: usize) -> Result<SpectralMeasure> {
    match spec.theory {
        Theory::Oscillator => oscillator::osc_spectrum(spec, levels),
        Theory::Coulomb => coulomb::coul_spectrum(spec, levels),
    }
}

/// Spectral density σ′(E) of either theory.
pub fn density(spec: &ProblemSpec, e: f64) -> Result<f64> {
    match spec.theory {
        Theory::Oscillator => oscillator::osc_density(spec, e),
        Theory::Coulomb => coulomb::coul_density(spec, e),
    }
}

/// Normalized (generalized) eigenfunction of either theory.
pub fn eigenfunction(spec: &ProblemSpec, which: Selector) -> Result<RadialWave> {
    match spec.theory {
        Theory::Oscillator => oscillator::osc_eigenfunction(spec, which),
        Theory::Coulomb => coulomb::coul_eigenfunction(spec, which),
    }
}
