//! The exact correspondence between the Coulomb-like and oscillator-like
//! radial problems.
//!
//! The change of variables u = √(x/κ₀) with the parameter swap
//! W = −4κ₀g, λ = −4κ₀²ℰ maps the Coulomb equation at angular momentum m
//! onto the oscillator equation at the same m. Under it
//! `C_k(x; ℰ) = (κ₀u)^{1/2} O_k(u; W)` for the regular, decaying and
//! singular solutions, the coefficient functions obey ω_O = 2ω_C,
//! B_O = B_C, Ω_C = 2Ω_O, and every oscillator level is a Coulomb bound
//! state of the dual problem.
//!
//! The checks here evaluate both sides through their own modules; neither
//! side is derived from the other.

use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::coulomb::{coul_big_omega, coul_coefficients, coul_density, coul_family_function, coul_solution, coul_spectrum, CoulKind};
use crate::error::{domain, Error, Result};
use crate::model::ProblemSpec;
use crate::oscillator::{
    osc_big_omega, osc_coefficients, osc_density, osc_family_function, osc_solution, osc_spectrum, OscKind,
};

/// Samples whose α lies closer than this to a pole are excluded from
/// coefficient comparisons (both sides diverge identically there).
pub const POLE_EXCLUSION_RADIUS: f64 = 1e-3;

/// The coordinate and parameter map at scale κ₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityMap {
    kappa0: f64,
}

/// A point of the oscillator theory: radius u, energy W and coupling λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscPoint {
    pub u: f64,
    pub w: f64,
    pub lambda: C64,
}

/// A point of the Coulomb theory: radius x, energy ℰ and coupling g.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulPoint {
    pub x: f64,
    pub e: C64,
    pub g: f64,
}

impl DualityMap {
    pub fn new(kappa0: f64) -> Result<Self> {
        if kappa0 > 0.0 && kappa0.is_finite() {
            Ok(Self { kappa0 })
        } else {
            Err(Error::Validation(format!("kappa0 must be positive and finite, got {kappa0}")))
        }
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    /// u = √(x/κ₀), W = −4κ₀g, λ = −4κ₀²ℰ.
    pub fn to_oscillator(&self, p: CoulPoint) -> Result<OscPoint> {
        if !(p.x > 0.0) || !p.x.is_finite() {
            return Err(domain("coulomb_to_oscillator", format!("x must be positive, got {}", p.x)));
        }
        let k0 = self.kappa0;
        Ok(OscPoint {
            u: (p.x / k0).sqrt(),
            w: -4.0 * k0 * p.g,
            lambda: p.e * (-4.0 * k0 * k0),
        })
    }

    /// x = κ₀u², ℰ = −λ/4κ₀², g = −W/4κ₀.
    pub fn to_coulomb(&self, p: OscPoint) -> CoulPoint {
        let k0 = self.kappa0;
        CoulPoint {
            x: k0 * p.u * p.u,
            e: p.lambda / (-4.0 * k0 * k0),
            g: -p.w / (4.0 * k0),
        }
    }
}

/// (u, W, λ) dual to (x, ℰ, g).
pub fn coulomb_to_oscillator(x: f64, e: C64, g: f64, kappa0: f64) -> Result<(f64, f64, C64)> {
    let p = DualityMap::new(kappa0)?.to_oscillator(CoulPoint { x, e, g })?;
    Ok((p.u, p.w, p.lambda))
}

/// (x, ℰ, g) dual to (u, W, λ).
pub fn oscillator_to_coulomb(u: f64, w: f64, lambda: C64, kappa0: f64) -> Result<(f64, C64, f64)> {
    let p = DualityMap::new(kappa0)?.to_coulomb(OscPoint { u, w, lambda });
    Ok((p.x, p.e, p.g))
}

/// Solution channel compared by [`verify_solution_identity`]: k = 1
/// (regular), 2 (logarithmic, m = 0 only), 3 (decaying), 4 (singular, |m| ≥ 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Channel {
    Regular,
    Logarithmic,
    Decaying,
    Singular,
}

impl Channel {
    pub fn from_index(k: u8, m: i32) -> Result<Self> {
        match (k, m) {
            (1, _) => Ok(Channel::Regular),
            (2, 0) => Ok(Channel::Logarithmic),
            (3, _) => Ok(Channel::Decaying),
            (4, m) if m != 0 => Ok(Channel::Singular),
            _ => Err(domain(
                "verify_solution_identity",
                format!("no solution channel k={k} for m={m} (k in 1,3,4 for |m|>=1; 1,2,3 for m=0)"),
            )),
        }
    }

    fn kinds(self) -> (CoulKind, OscKind) {
        match self {
            Channel::Regular => (CoulKind::C1, OscKind::O1),
            Channel::Logarithmic => (CoulKind::C2, OscKind::O2),
            Channel::Decaying => (CoulKind::C3, OscKind::O3),
            Channel::Singular => (CoulKind::C4, OscKind::O4),
        }
    }
}

/// Largest deviation found by one identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_deviation: f64,
    pub evaluated: usize,
    /// Samples skipped (pole neighbourhoods or evaluation failures), with reasons.
    pub excluded: Vec<String>,
}

impl IdentityCheck {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            max_deviation: 0.0,
            evaluated: 0,
            excluded: vec![],
        }
    }

    fn record(&mut self, lhs: C64, rhs: C64) {
        let scale = lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE);
        let dev = (lhs - rhs).norm() / scale;
        self.max_deviation = self.max_deviation.max(if dev.is_nan() { f64::INFINITY } else { dev });
        self.evaluated += 1;
    }

    fn exclude(&mut self, index: usize, reason: impl std::fmt::Display) {
        self.excluded.push(format!("sample {index}: {reason}"));
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.evaluated > 0 && self.max_deviation <= tol
    }
}

/// Relative deviation max |C_k(x; ℰ) − (κ₀u)^{1/2} O_k(u; W)| / scale over the samples.
pub fn verify_solution_identity(k: u8, m: i32, samples: &[CoulPoint], kappa0: f64) -> Result<IdentityCheck> {
    let channel = Channel::from_index(k, m)?;
    let map = DualityMap::new(kappa0)?;
    let (ck, ok) = channel.kinds();
    let mut check = IdentityCheck::new(format!("C{k} = (k0 u)^(1/2) O{k}, m={m}"));
    for (i, p) in samples.iter().enumerate() {
        let o = map.to_oscillator(*p)?;
        let lhs = coul_solution(ck, m, p.x, p.e, p.g, kappa0);
        let rhs = osc_solution(ok, m, o.u, C64::new(o.w, 0.0), o.lambda, kappa0);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => check.record(l, r * (kappa0 * o.u).sqrt()),
            (Err(e), _) | (_, Err(e)) => check.exclude(i, e),
        }
    }
    Ok(check)
}

/// Distance from α to the nearest integer in (−∞, n].
fn pole_distance(alpha: C64, n: u32) -> f64 {
    let r = alpha.re.round().min(n as f64);
    C64::new(alpha.re - r, alpha.im).norm()
}

/// Coefficient identities at the given (ℰ, g) samples: for |m| ≥ 1
/// ω_O = 2ω_C, B_O = B_C, Ω_C = 2Ω_O; for m = 0 ω_{C0} = ω_{O0} and, at
/// the shared angle ζ, ω_{Cζ} = ω_{Oζ}.
pub fn verify_coefficient_identities(
    m: i32,
    samples: &[(C64, f64)],
    zeta: Option<f64>,
    kappa0: f64,
) -> Result<Vec<IdentityCheck>> {
    let map = DualityMap::new(kappa0)?;
    let n = m.unsigned_abs();
    if m == 0 {
        let mut w0 = IdentityCheck::new("omega_C0 = omega_O0");
        let mut wz = IdentityCheck::new(format!("omega_C,zeta = omega_O,zeta (zeta={})", zeta.unwrap_or(FRAC_PI_2)));
        let (s, c) = crate::model::zeta_sin_cos(zeta.unwrap_or(FRAC_PI_2));
        for (i, &(e, g)) in samples.iter().enumerate() {
            let o = map.to_oscillator(CoulPoint { x: 1.0, e, g })?;
            if let Ok(par) = crate::coulomb::coul_parameters(0, 1.0, e, g) {
                if pole_distance(par.alpha, 0) < POLE_EXCLUSION_RADIUS {
                    w0.exclude(i, "alpha within the pole exclusion radius");
                    wz.exclude(i, "alpha within the pole exclusion radius");
                    continue;
                }
            }
            let fc = coul_family_function(0, e, g, kappa0);
            let fo = osc_family_function(C64::new(o.w, 0.0), o.lambda, kappa0);
            match (fc, fo) {
                (Ok(fc), Ok(fo)) => {
                    w0.record(fc * 2.0, fo * 2.0);
                    wz.record(fc * c + s, fo * c + s);
                }
                (Err(err), _) | (_, Err(err)) => {
                    w0.exclude(i, &err);
                    wz.exclude(i, err);
                }
            }
        }
        return Ok(vec![w0, wz]);
    }
    let mut omega = IdentityCheck::new(format!("omega_O = 2 omega_C, m={m}"));
    let mut b = IdentityCheck::new(format!("B_O = B_C, m={m}"));
    let mut big = IdentityCheck::new(format!("Omega_C = 2 Omega_O, m={m}"));
    for (i, &(e, g)) in samples.iter().enumerate() {
        let o = map.to_oscillator(CoulPoint { x: 1.0, e, g })?;
        let near_pole = crate::coulomb::coul_parameters(m, 1.0, e, g)
            .map(|p| pole_distance(p.alpha, n) < POLE_EXCLUSION_RADIUS)
            .unwrap_or(true);
        if near_pole {
            for chk in [&mut omega, &mut b, &mut big] {
                chk.exclude(i, "alpha within the pole exclusion radius");
            }
            continue;
        }
        match (coul_coefficients(m, e, g, kappa0), osc_coefficients(m, C64::new(o.w, 0.0), o.lambda, kappa0)) {
            (Ok(cc), Ok(oc)) => {
                omega.record(oc.omega, cc.omega * 2.0);
                b.record(oc.b, cc.b);
                big.record(cc.big_omega, oc.big_omega * 2.0);
            }
            (Err(err), _) | (_, Err(err)) => {
                for chk in [&mut omega, &mut b, &mut big] {
                    chk.exclude(i, &err);
                }
            }
        }
    }
    Ok(vec![omega, b, big])
}

/// One oscillator level and its dual Coulomb bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelPair {
    pub n: usize,
    /// Oscillator level E_n.
    pub oscillator_level: f64,
    /// Dual Coulomb coupling g = −E_n/4κ₀.
    pub coupling: f64,
    /// The Coulomb level with index n at that coupling.
    pub coulomb_level: f64,
    /// The dual energy −λ/4κ₀² it must equal.
    pub target: f64,
}

/// Report of [`verify_spectrum_correspondence`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCorrespondence {
    pub pairs: Vec<LevelPair>,
    pub max_deviation: f64,
}

/// For λ > 0 checks that each oscillator level E_n (n ≤ n_max) is the n-th
/// bound state of the dual Coulomb problem g = −E_n/4κ₀, located at
/// ℰ = −λ/4κ₀². For |m| ≤ 1 the correspondence is one-to-one only for the
/// ζ = π/2 extensions, which are used on the family sides.
pub fn verify_spectrum_correspondence(m: i32, lambda: f64, n_max: usize, kappa0: f64) -> Result<SpectrumCorrespondence> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain("verify_spectrum_correspondence", "requires lambda > 0"));
    }
    let mut osc = ProblemSpec::oscillator(m, lambda).with_kappa0(kappa0);
    if m == 0 {
        osc = osc.with_zeta(FRAC_PI_2);
    }
    let levels = osc_spectrum(&osc, n_max + 1)?;
    let target = -lambda / (4.0 * kappa0 * kappa0);
    let mut pairs = Vec::with_capacity(n_max + 1);
    let mut max_deviation: f64 = 0.0;
    for (n, atom) in levels.discrete.iter().enumerate() {
        let g = -atom.energy / (4.0 * kappa0);
        let mut coul = ProblemSpec::coulomb(m, g).with_kappa0(kappa0);
        if m.abs() <= 1 {
            coul = coul.with_zeta(FRAC_PI_2);
        }
        let c = coul_spectrum(&coul, n + 1)?;
        let level = c.discrete.get(n).ok_or_else(|| Error::Index {
            index: n,
            reason: "the dual Coulomb problem has too few bound states".into(),
        })?;
        max_deviation = max_deviation.max((level.energy - target).abs());
        pairs.push(LevelPair {
            n,
            oscillator_level: atom.energy,
            coupling: g,
            coulomb_level: level.energy,
            target,
        });
    }
    Ok(SpectrumCorrespondence { pairs, max_deviation })
}

/// Continuous-side check: the Coulomb density at E_C > 0 equals twice the
/// oscillator density at the dual point (λ = −4κ₀²E_C < 0, W = −4κ₀g), as
/// implied by Ω_C = 2Ω_O. Applies to |m| ≥ 2 and to m = 0 with the same ζ on
/// both sides. Samples are (E_C, g).
pub fn verify_density_correspondence(
    m: i32,
    zeta: Option<f64>,
    samples: &[(f64, f64)],
    kappa0: f64,
) -> Result<IdentityCheck> {
    if m.abs() == 1 {
        return Err(domain(
            "verify_density_correspondence",
            "the m = ±1 Coulomb family has no oscillator counterpart with a shared angle",
        ));
    }
    let map = DualityMap::new(kappa0)?;
    let mut check = IdentityCheck::new(format!("sigma'_C = 2 sigma'_O, m={m}"));
    for (i, &(e, g)) in samples.iter().enumerate() {
        if !(e > 0.0) {
            check.exclude(i, "E_C must be positive");
            continue;
        }
        let o = map.to_oscillator(CoulPoint { x: 1.0, e: C64::new(e, 0.0), g })?;
        let mut cs = ProblemSpec::coulomb(m, g).with_kappa0(kappa0);
        let mut os = ProblemSpec::oscillator(m, o.lambda.re).with_kappa0(kappa0);
        if m == 0 {
            let z = zeta.unwrap_or(FRAC_PI_2);
            cs = cs.with_zeta(z);
            os = os.with_zeta(z);
        }
        match (coul_density(&cs, e), osc_density(&os, o.w)) {
            (Ok(dc), Ok(dosc)) => check.record(C64::new(dc, 0.0), C64::new(2.0 * dosc, 0.0)),
            (Err(err), _) | (_, Err(err)) => check.exclude(i, err),
        }
    }
    Ok(check)
}

/// Continuous-side Ω check straight from the Green-function coefficients
/// of the two self-adjoint operators (|m| ≥ 2 or m = 0 with shared ζ):
/// Ω_C(E_C + i0) = 2Ω_O(W) at λ = −4κ₀²E_C.
pub fn verify_spectral_omega(m: i32, zeta: Option<f64>, samples: &[(f64, f64)], kappa0: f64) -> Result<IdentityCheck> {
    let map = DualityMap::new(kappa0)?;
    let mut check = IdentityCheck::new(format!("Omega_C(E+i0) = 2 Omega_O, m={m}"));
    for (i, &(e, g)) in samples.iter().enumerate() {
        let o = map.to_oscillator(CoulPoint { x: 1.0, e: C64::new(e, 0.0), g })?;
        let mut cs = ProblemSpec::coulomb(m, g).with_kappa0(kappa0);
        let mut os = ProblemSpec::oscillator(m, o.lambda.re).with_kappa0(kappa0);
        if m == 0 {
            let z = zeta.unwrap_or(FRAC_PI_2);
            cs = cs.with_zeta(z);
            os = os.with_zeta(z);
        }
        match (coul_big_omega(&cs, C64::new(e, 0.0)), osc_big_omega(&os, C64::new(o.w, 0.0))) {
            (Ok(a), Ok(b)) => check.record(a, b * 2.0),
            (Err(err), _) | (_, Err(err)) => check.exclude(i, err),
        }
    }
    Ok(check)
}

/// Reproducible random Coulomb-side samples covering the upper and lower
/// half-planes and both real half-axes: x ∈ [0.1, 5], |ℰ| ∈ [0.05, 4],
/// g ∈ [−3, 3].
pub fn random_samples(count: usize, seed: u64) -> Vec<CoulPoint> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let x = rng.random_range(0.1..5.0);
            let g = rng.random_range(-3.0..3.0);
            let r: f64 = rng.random_range(0.05..4.0);
            let e = match i % 4 {
                0 => C64::from_polar(r, rng.random_range(0.05..std::f64::consts::PI - 0.05)),
                1 => C64::from_polar(r, -rng.random_range(0.05..std::f64::consts::PI - 0.05)),
                2 => C64::new(-r, 0.0),
                _ => C64::new(r, 0.0),
            };
            CoulPoint { x, e, g }
        })
        .collect()
}
