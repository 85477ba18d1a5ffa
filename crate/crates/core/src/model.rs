//! Shared data model: problem specifications, regime cells, energies with
//! branch bookkeeping, spectral measures and radial wave handles.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};

/// Which radial operator a problem refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    /// `−∂²_u + u⁻²(m² − 1/4) + λu²`
    Oscillator,
    /// `−∂²_x + (2x)⁻²(m² − 1) + g/x`
    Coulomb,
}

/// Representatives closer than this to ±π/2 are snapped to π/2, so that
/// decimal inputs such as `1.5707963` select the ζ = π/2 extension exactly.
pub const ZETA_SNAP: f64 = 1e-7;

/// Canonical extension angle ζ ∈ (−π/2, π/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionParam {
    zeta: f64,
}

impl ExtensionParam {
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// True for the ζ = π/2 member of a family.
    pub fn is_half_pi(&self) -> bool {
        self.zeta == FRAC_PI_2
    }

    /// (sin ζ, cos ζ) with cos ζ exactly 0 at ζ = π/2.
    pub fn sin_cos(&self) -> (f64, f64) {
        if self.is_half_pi() {
            (1.0, 0.0)
        } else {
            self.zeta.sin_cos()
        }
    }
}

/// Reduces an angle modulo π into (−π/2, π/2], identifying −π/2 with π/2.
pub fn canonicalize_zeta(raw: f64) -> Result<ExtensionParam> {
    if !raw.is_finite() {
        return Err(domain("canonicalize_zeta", format!("non-finite angle {raw}")));
    }
    let mut t = raw - PI * ((raw + FRAC_PI_2) / PI).floor();
    if t <= -FRAC_PI_2 + ZETA_SNAP || t >= FRAC_PI_2 - ZETA_SNAP {
        t = FRAC_PI_2;
    }
    Ok(ExtensionParam { zeta: t })
}

/// One radial problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub theory: Theory,
    pub m: i32,
    /// λ for the oscillator, g for the Coulomb problem.
    pub coupling: f64,
    pub kappa0: f64,
    pub extension: Option<ExtensionParam>,
}

impl ProblemSpec {
    pub fn oscillator(m: i32, lambda: f64) -> Self {
        Self {
            theory: Theory::Oscillator,
            m,
            coupling: lambda,
            kappa0: 1.0,
            extension: None,
        }
    }

    pub fn coulomb(m: i32, g: f64) -> Self {
        Self {
            theory: Theory::Coulomb,
            m,
            coupling: g,
            kappa0: 1.0,
            extension: None,
        }
    }

    pub fn with_kappa0(mut self, kappa0: f64) -> Self {
        self.kappa0 = kappa0;
        self
    }

    /// Attaches an extension angle (canonicalized; non-finite input panics-free
    /// falls back to validation failure in [`classify`]).
    pub fn with_zeta(mut self, zeta: f64) -> Self {
        self.extension = Some(canonicalize_zeta(zeta).unwrap_or(ExtensionParam { zeta: f64::NAN }));
        self
    }

    pub fn zeta(&self) -> Option<f64> {
        self.extension.map(|e| e.zeta)
    }

    /// Whether this (theory, m) admits a one-parameter family of extensions.
    pub fn admits_family(&self) -> bool {
        match self.theory {
            Theory::Oscillator => self.m == 0,
            Theory::Coulomb => self.m.abs() <= 1,
        }
    }
}

/// Sign of the coupling constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Self {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// The exhaustive regime cells that select a formula set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RegimeClass {
    /// |m| ≥ 1, λ > 0: purely discrete spectrum.
    OscDiscrete { m: i32 },
    /// |m| ≥ 1, λ < 0: continuous spectrum filling ℝ.
    OscInverted { m: i32 },
    /// |m| ≥ 1, λ = 0: continuous spectrum ℝ₊.
    OscFree { m: i32 },
    /// m = 0, λ > 0: extension family, discrete spectrum.
    OscFamilyDiscrete { zeta: f64 },
    /// m = 0, λ < 0: extension family, continuous spectrum ℝ.
    OscFamilyInverted { zeta: f64 },
    /// m = 0, λ = 0: extension family, ℝ₊ plus at most one bound state.
    OscFamilyFree { zeta: f64 },
    /// |m| ≥ 2: unique extension.
    CoulUnique { m: i32, sign: Sign },
    /// m = ±1: extension family with its own angle.
    CoulFamilyOne { m: i32, sign: Sign, zeta: f64 },
    /// m = 0: extension family.
    CoulFamilyZero { sign: Sign, zeta: f64 },
}

impl RegimeClass {
    pub fn label(&self) -> String {
        let s = |sign: &Sign| match sign {
            Sign::Negative => "g<0",
            Sign::Zero => "g=0",
            Sign::Positive => "g>0",
        };
        match self {
            RegimeClass::OscDiscrete { .. } => "osc |m|>=1, lambda>0 - discrete".into(),
            RegimeClass::OscInverted { .. } => "osc |m|>=1, lambda<0 - continuous on R".into(),
            RegimeClass::OscFree { .. } => "osc |m|>=1, lambda=0 - continuous on R+".into(),
            RegimeClass::OscFamilyDiscrete { .. } => "osc m=0 family, lambda>0 - discrete".into(),
            RegimeClass::OscFamilyInverted { .. } => "osc m=0 family, lambda<0 - continuous on R".into(),
            RegimeClass::OscFamilyFree { .. } => "osc m=0 family, lambda=0 - R+ plus bound state".into(),
            RegimeClass::CoulUnique { sign, .. } => format!("coul |m|>=2, {}", s(sign)),
            RegimeClass::CoulFamilyOne { sign, .. } => format!("coul m=±1 family, {}", s(sign)),
            RegimeClass::CoulFamilyZero { sign, .. } => format!("coul m=0 family, {}", s(sign)),
        }
    }
}

impl fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Validates a specification and returns its regime cell.
pub fn classify(spec: &ProblemSpec) -> Result<RegimeClass> {
    if !(spec.kappa0 > 0.0) || !spec.kappa0.is_finite() {
        return Err(Error::Validation(format!("kappa0 must be positive and finite, got {}", spec.kappa0)));
    }
    if !spec.coupling.is_finite() {
        return Err(Error::Validation(format!("coupling must be finite, got {}", spec.coupling)));
    }
    let zeta = match (spec.admits_family(), spec.extension) {
        (true, Some(e)) if e.zeta.is_finite() => Some(e.zeta),
        (true, Some(_)) => return Err(Error::Validation("extension angle must be finite".into())),
        (true, None) => {
            return Err(Error::Validation(format!(
                "{:?} m={} admits a one-parameter family of self-adjoint extensions; an extension angle zeta is required",
                spec.theory, spec.m
            )))
        }
        (false, Some(_)) => {
            return Err(Error::Validation(format!(
                "{:?} m={} has a unique self-adjoint extension; no extension angle may be given",
                spec.theory, spec.m
            )))
        }
        (false, None) => None,
    };
    let sign = Sign::of(spec.coupling);
    Ok(match (spec.theory, zeta) {
        (Theory::Oscillator, None) => match sign {
            Sign::Positive => RegimeClass::OscDiscrete { m: spec.m },
            Sign::Negative => RegimeClass::OscInverted { m: spec.m },
            Sign::Zero => RegimeClass::OscFree { m: spec.m },
        },
        (Theory::Oscillator, Some(zeta)) => match sign {
            Sign::Positive => RegimeClass::OscFamilyDiscrete { zeta },
            Sign::Negative => RegimeClass::OscFamilyInverted { zeta },
            Sign::Zero => RegimeClass::OscFamilyFree { zeta },
        },
        (Theory::Coulomb, None) => RegimeClass::CoulUnique { m: spec.m, sign },
        (Theory::Coulomb, Some(zeta)) if spec.m == 0 => RegimeClass::CoulFamilyZero { sign, zeta },
        (Theory::Coulomb, Some(zeta)) => RegimeClass::CoulFamilyOne { m: spec.m, sign, zeta },
    })
}

/// A point in the closed upper half-plane of complex energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEnergy {
    value: C64,
}

impl ComplexEnergy {
    pub fn new(value: C64) -> Result<Self> {
        if !(value.im >= 0.0) || !value.is_finite() {
            return Err(domain("ComplexEnergy", format!("energy must be finite with Im >= 0, got {value}")));
        }
        Ok(Self { value })
    }

    pub fn real(e: f64) -> Result<Self> {
        Self::new(C64::new(e, 0.0))
    }

    pub fn value(&self) -> C64 {
        self.value
    }

    /// Phase φ ∈ [0, π].
    pub fn phase(&self) -> f64 {
        if self.value.im == 0.0 {
            if self.value.re < 0.0 {
                PI
            } else {
                0.0
            }
        } else {
            self.value.arg()
        }
    }

    /// K = √(−ℰ) = √|ℰ| e^{i(φ−π)/2}, so Re K ≥ 0 and K = −i√E on ℰ = E > 0.
    pub fn k_coulomb(&self) -> C64 {
        C64::from_polar(self.value.norm().sqrt(), (self.phase() - PI) / 2.0)
    }

    /// K = √W = √|W| e^{iφ/2}, so Im K ≥ 0.
    pub fn k_free(&self) -> C64 {
        C64::from_polar(self.value.norm().sqrt(), self.phase() / 2.0)
    }
}

/// Support of the continuous part of a spectral measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "R+")]
    PositiveHalfLine,
    #[serde(rename = "empty")]
    Empty,
}

impl Support {
    pub fn contains(&self, e: f64) -> bool {
        match self {
            Support::Real => true,
            Support::PositiveHalfLine => e >= 0.0,
            Support::Empty => false,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Support::Real => "R",
            Support::PositiveHalfLine => "R+",
            Support::Empty => "empty",
        }
    }
}

/// Discrete spectral point with weight Q_n².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub energy: f64,
    pub weight: f64,
}

/// Size of the discrete spectrum in a regime cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiscreteCount {
    None,
    One,
    /// Infinite ladder; only the requested number of levels is materialized.
    Ladder,
}

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Atoms plus an absolutely continuous density σ′.
#[derive(Clone)]
pub struct SpectralMeasure {
    pub discrete: Vec<Atom>,
    pub discrete_count: DiscreteCount,
    pub support: Support,
    density: Option<DensityFn>,
}

impl fmt::Debug for SpectralMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralMeasure")
            .field("discrete", &self.discrete)
            .field("discrete_count", &self.discrete_count)
            .field("support", &self.support)
            .finish()
    }
}

impl SpectralMeasure {
    pub fn new(mut discrete: Vec<Atom>, discrete_count: DiscreteCount, support: Support, density: Option<DensityFn>) -> Self {
        discrete.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Self {
            discrete,
            discrete_count,
            support,
            density,
        }
    }

    /// σ′(E); zero off the support.
    pub fn density(&self, e: f64) -> f64 {
        match &self.density {
            Some(f) if self.support.contains(e) => f(e),
            _ => 0.0,
        }
    }

    pub fn has_density(&self) -> bool {
        self.density.is_some() && self.support != Support::Empty
    }

    pub fn energies(&self) -> Vec<f64> {
        self.discrete.iter().map(|a| a.energy).collect()
    }
}

/// One evaluated point of a spectral measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureSample {
    pub energy: f64,
    /// Q_n² for discrete points, σ′(E) otherwise.
    pub value: f64,
    pub discrete: bool,
}

/// Evaluates a measure on a sorted grid; grid points hitting an atom report its weight.
pub fn sample_measure(measure: &SpectralMeasure, grid: &[f64]) -> Vec<MeasureSample> {
    grid.iter()
        .map(|&e| {
            let hit = measure
                .discrete
                .iter()
                .find(|a| (a.energy - e).abs() <= 1e-12 * a.energy.abs().max(1.0));
            match hit {
                Some(a) => MeasureSample {
                    energy: a.energy,
                    value: a.weight,
                    discrete: true,
                },
                None => MeasureSample {
                    energy: e,
                    value: measure.density(e),
                    discrete: false,
                },
            }
        })
        .collect()
}

/// Small-argument behaviour of a radial function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AsymptoticClass {
    /// (κ₀r)^exponent
    Power { exponent: f64 },
    /// (κ₀r)^{1/2} sin ζ + c·(κ₀r)^{1/2} ln(κ₀r) cos ζ
    LogMixed { zeta: f64, log_coefficient: f64 },
    /// κ₀r sin ζ + cos ζ
    LinearMixed { zeta: f64 },
}

impl AsymptoticClass {
    /// Leading small-r form (κ₀ absorbed into `s = κ₀r`).
    pub fn leading(&self, s: f64) -> f64 {
        match *self {
            AsymptoticClass::Power { exponent } => s.powf(exponent),
            AsymptoticClass::LogMixed { zeta, log_coefficient } => {
                let (sn, cs) = zeta_sin_cos(zeta);
                s.sqrt() * sn + log_coefficient * s.sqrt() * s.ln() * cs
            }
            AsymptoticClass::LinearMixed { zeta } => {
                let (sn, cs) = zeta_sin_cos(zeta);
                s * sn + cs
            }
        }
    }
}

pub(crate) fn zeta_sin_cos(zeta: f64) -> (f64, f64) {
    if zeta == FRAC_PI_2 {
        (1.0, 0.0)
    } else {
        zeta.sin_cos()
    }
}

/// Which eigenfunction to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Selector {
    /// n-th discrete level, counted from the bottom of the discrete spectrum.
    Level(usize),
    /// Generalized eigenfunction at a point of the continuous support.
    Energy(f64),
}

pub type WaveFn = Arc<dyn Fn(f64) -> Result<C64> + Send + Sync>;

/// Evaluable radial function with its normalization constant.
#[derive(Clone)]
pub struct RadialWave {
    evaluator: WaveFn,
    pub norm_constant: f64,
    pub asymptotic_class: AsymptoticClass,
}

impl fmt::Debug for RadialWave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialWave")
            .field("norm_constant", &self.norm_constant)
            .field("asymptotic_class", &self.asymptotic_class)
            .finish()
    }
}

impl RadialWave {
    pub fn new(evaluator: WaveFn, norm_constant: f64, asymptotic_class: AsymptoticClass) -> Self {
        Self {
            evaluator,
            norm_constant,
            asymptotic_class,
        }
    }

    /// Normalized value at r > 0.
    pub fn eval(&self, r: f64) -> Result<C64> {
        if !(r > 0.0) {
            return Err(domain("RadialWave::eval", format!("radius must be positive, got {r}")));
        }
        (self.evaluator)(r)
    }

    /// Real part of the normalized value (eigenfunctions are real).
    pub fn eval_real(&self, r: f64) -> Result<f64> {
        self.eval(r).map(|v| v.re)
    }
}
