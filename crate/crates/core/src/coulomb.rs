//! Coulomb-like radial problem ȟ_m = −∂²_x + (2x)⁻²(m² − 1) + g/x.
//!
//! With n = |m|, K = √(−ℰ) (Re K > 0 off the cut, K = −i√E for ℰ = E > 0),
//! z = 2Kx and α = 1/2 + n/2 + g/2K:
//!
//! * `C1 = (κ₀x)^{1/2+n/2} e^{−z/2} Φ(α, n+1; z)` — regular at the origin;
//! * `C3 = (κ₀x)^{1/2+n/2} e^{−z/2} Ψ(α, n+1; z)` — decaying for Im ℰ > 0;
//! * `C4 ~ (κ₀x)^{1/2−n/2}` — the real-entire singular solution (n ≥ 1);
//! * `C2 ~ (1/2)(κ₀x)^{1/2} ln(κ₀x)` — the logarithmic solution (n = 0);
//! * `C3 = B·C1 + C·C4` with `Wr(C1, C3) = −κ₀nC = −ω`.
//!
//! The channels m = ±1 and m = 0 carry one-parameter families of
//! self-adjoint extensions, `U = C1 sin ζ + C4 cos ζ` and
//! `U = C1 sin ζ + C2 cos ζ` respectively. The family for m = −1 uses the
//! same formulas with its own, independent angle.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::model::{
    classify, zeta_sin_cos, AsymptoticClass, Atom, ComplexEnergy, DensityFn, DiscreteCount, ProblemSpec, RadialWave,
    RegimeClass, Selector, Sign, SpectralMeasure, Support, Theory,
};
use crate::roots::increasing_root;
use crate::specfun::{
    bessel, digamma, factorial, gamma, gamma_ln, kummer_companion, kummer_m, kummer_m_param_derivative,
    nonpositive_integer, pochhammer, rgamma, trigamma, tricomi_u, BesselKind, SeriesControl, PSI_ONE,
};

/// Named Coulomb solutions; `C2` exists only for m = 0, `C4` only for |m| ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoulKind {
    C1,
    C2,
    C3,
    C4,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Atoms closer than this (relative) to a critical angle are placed at E = 0.
const CRITICAL_TOL: f64 = 1e-10;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// K = √(−ℰ): the principal root, except K = −i√E on the positive real axis
/// (the boundary value from the upper half-plane).
pub fn coulomb_k(e: C64) -> C64 {
    if e.im == 0.0 && e.re > 0.0 {
        C64::new(0.0, -e.re.sqrt())
    } else {
        (-e).sqrt()
    }
}

/// Parameters of the confluent-hypergeometric representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulParameters {
    pub alpha: C64,
    pub alpha_minus: C64,
    pub beta: u32,
    pub k: C64,
    pub z: C64,
}

/// α, α₋, β, K and z at (m, x, ℰ, g); ℰ = 0 is a branch point and rejected.
pub fn coul_parameters(m: i32, x: f64, e: C64, g: f64) -> Result<CoulParameters> {
    let s = Solutions::new(m, e, g, 1.0)?;
    Ok(CoulParameters {
        alpha: s.alpha,
        alpha_minus: s.alpha - s.n as f64,
        beta: s.n + 1,
        k: s.k,
        z: s.z(x),
    })
}

#[derive(Debug, Clone, Copy)]
struct Solutions {
    n: u32,
    kappa0: f64,
    g: f64,
    k: C64,
    alpha: C64,
}

impl Solutions {
    fn new(m: i32, e: C64, g: f64, kappa0: f64) -> Result<Self> {
        let k = coulomb_k(e);
        if k == ZERO {
            return Err(domain("coul_solution", "E = 0 is a branch point of the solutions"));
        }
        let n = m.unsigned_abs();
        Ok(Self {
            n,
            kappa0,
            g,
            k,
            alpha: c(0.5 + n as f64 / 2.0) + g / (k * 2.0),
        })
    }

    /// The polynomial solution at the ladder point α = −level.
    fn at_level(m: i32, e: f64, g: f64, kappa0: f64, level: usize) -> Result<Self> {
        let mut s = Self::new(m, c(e), g, kappa0)?;
        s.alpha = c(-(level as f64));
        Ok(s)
    }

    fn z(&self, x: f64) -> C64 {
        self.k * (2.0 * x)
    }

    /// ln(2K/κ₀)
    fn ell(&self) -> C64 {
        (self.k * (2.0 / self.kappa0)).ln()
    }

    /// (κ₀x)^{1/2+n/2} e^{−z/2}
    fn prefactor(&self, x: f64) -> C64 {
        ((0.5 + 0.5 * self.n as f64) * (self.kappa0 * x).ln() - self.z(x) * 0.5).exp()
    }

    fn c1(&self, x: f64) -> Result<C64> {
        Ok(self.prefactor(x) * kummer_m(self.alpha, c(self.n as f64 + 1.0), self.z(x), &ctl())?)
    }

    fn c3(&self, x: f64) -> Result<C64> {
        Ok(self.prefactor(x) * tricomi_u(self.alpha, self.n as i32 + 1, self.z(x), &ctl())?)
    }

    fn c4(&self, x: f64) -> Result<C64> {
        let ell = self.ell();
        let (h, _) = kummer_companion(self.alpha, self.n, self.z(x), ell, &ctl())?;
        Ok(self.prefactor(x) * (ell * self.n as f64).exp() / factorial(self.n - 1) * h)
    }

    fn c2(&self, x: f64) -> Result<C64> {
        let d = kummer_m_param_derivative(self.alpha, ONE, self.z(x), 0.5, 1.0, &ctl())?;
        Ok(self.prefactor(x) * d + self.c1(x)? * (0.5 * (self.kappa0 * x).ln()))
    }

    /// f₁ = (g/2κ₀)[ψ(α) + ψ(α₋) + 2 ln(2K/κ₀)] for n = 1, written as
    /// (g/κ₀)[ψ(α) + ln(2K/κ₀)] − K/κ₀, which stays finite as g → 0.
    fn f1(&self) -> Result<C64> {
        let k0 = self.kappa0;
        if self.g == 0.0 {
            return Ok(-self.k / k0);
        }
        Ok((digamma(self.alpha)? + self.ell()) * (self.g / k0) - self.k / k0)
    }

    /// f₀ = ω₀/2 = ψ(1) − ψ(α)/2 − ln(2K/κ₀)/2 for n = 0.
    fn f0(&self) -> Result<C64> {
        Ok(c(PSI_ONE) - (digamma(self.alpha)? + self.ell()) * 0.5)
    }

    /// Γ(α)(2K/κ₀)^n / (κ₀ n Γ(n)) = 1/ω for n ≥ 1.
    fn inv_omega(&self) -> Result<C64> {
        let n = self.n;
        Ok(gamma(self.alpha)? * (self.ell() * n as f64).exp() / (self.kappa0 * n as f64 * factorial(n - 1)))
    }

    /// Ω = D[−2 ln(2K/κ₀) − ψ(α) − ψ(α₋)], D = (2K/κ₀)^n (1−α)_n / (2κ₀Γ²(β)), n ≥ 1.
    fn big_omega(&self) -> Result<C64> {
        let n = self.n;
        let am = self.alpha - n as f64;
        let g = factorial(n);
        let d = (self.ell() * n as f64).exp() * pochhammer(ONE - self.alpha, n) / (2.0 * self.kappa0 * g * g);
        Ok(d * (-self.ell() * 2.0 - digamma(self.alpha)? - digamma(am)?))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain("coul_solution", format!("x must be positive and finite, got {x}")))
    }
}

/// Value of the named solution at x > 0. C1, C2 and C4 are real for real ℰ.
pub fn coul_solution(kind: CoulKind, m: i32, x: f64, e: C64, g: f64, kappa0: f64) -> Result<C64> {
    check_x(x)?;
    match kind {
        CoulKind::C2 if m != 0 => return Err(domain("coul_solution", "C2 exists only for m = 0")),
        CoulKind::C4 if m == 0 => return Err(domain("coul_solution", "C4 exists only for |m| >= 1; use C2 for m = 0")),
        _ => {}
    }
    let s = Solutions::new(m, e, g, kappa0)?;
    match kind {
        CoulKind::C1 => s.c1(x),
        CoulKind::C2 => s.c2(x),
        CoulKind::C3 => s.c3(x),
        CoulKind::C4 => s.c4(x),
    }
}

/// Coefficients of `C3 = B·C1 + C·C4`, `ω = −Wr(C1, C3) = κ₀|m|C` and the
/// Green-function coefficient Ω of the unique-extension form (|m| ≥ 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulCoefficients {
    pub b: C64,
    pub c: C64,
    pub omega: C64,
    pub big_omega: C64,
}

/// B, C, ω and Ω for |m| ≥ 1. At the ladder points α = −k, C vanishes and
/// a pole is reported.
pub fn coul_coefficients(m: i32, e: C64, g: f64, kappa0: f64) -> Result<CoulCoefficients> {
    if m == 0 {
        return Err(domain("coul_coefficients", "defined for |m| >= 1"));
    }
    let s = Solutions::new(m, e, g, kappa0)?;
    if let Some(at) = nonpositive_integer(s.alpha) {
        return Err(Error::Pole {
            function: "coul_coefficients",
            at,
        });
    }
    let n = s.n;
    let am = s.alpha - n as f64;
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 }; // (−1)^{n+1}
    let b = rgamma(am) * (digamma(am)? + digamma(s.alpha)? + s.ell() * 2.0) * (sign / (2.0 * factorial(n)));
    let cc = (-s.ell() * n as f64).exp() * factorial(n - 1) * rgamma(s.alpha);
    Ok(CoulCoefficients {
        b,
        c: cc,
        omega: cc * (kappa0 * n as f64),
        big_omega: s.big_omega()?,
    })
}

/// Family function: f₁ for m = ±1 (levels solve f₁ = tan ζ) and
/// f₀ = ω₀/2 for m = 0 (levels solve f₀ = −tan ζ).
pub fn coul_family_function(m: i32, e: C64, g: f64, kappa0: f64) -> Result<C64> {
    let s = Solutions::new(m, e, g, kappa0)?;
    match m.abs() {
        1 => s.f1(),
        0 => s.f0(),
        _ => Err(domain("coul_family_function", "families exist only for m in {-1, 0, 1}")),
    }
}

/// Critical angle (g > 0) at which a zero-energy atom appears:
/// tan ζ₁ = (g/κ₀) ln(g/κ₀) for |m| = 1, tan ζ₀ = (1/2) ln(g/κ₀) − ψ(1) for m = 0.
pub fn coul_critical_zeta(m: i32, g: f64, kappa0: f64) -> Result<f64> {
    if !(g > 0.0) || !(kappa0 > 0.0) {
        return Err(domain("coul_critical_zeta", "requires g > 0 and kappa0 > 0"));
    }
    let r = g / kappa0;
    match m.abs() {
        1 => Ok((r * r.ln()).atan()),
        0 => Ok((0.5 * r.ln() - PSI_ONE).atan()),
        _ => Err(domain("coul_critical_zeta", "families exist only for m in {-1, 0, 1}")),
    }
}

fn coulomb_cell(spec: &ProblemSpec) -> Result<RegimeClass> {
    if spec.theory != Theory::Coulomb {
        return Err(Error::Validation("expected a Coulomb specification".into()));
    }
    classify(spec)
}

/// Ω(ℰ) of the self-adjoint operator normalized so that σ′(E) = (1/π) Im Ω(E + i0)
/// in every cell: the unique-extension Ω for |m| ≥ 2, −ω̃/(κ₀ω) for m = ±1
/// (ω = f₁ cos ζ − sin ζ, ω̃ = f₁ sin ζ + cos ζ) and 2ω̃/(κ₀ω) for m = 0
/// (ω = f₀ cos ζ + sin ζ, ω̃ = f₀ sin ζ − cos ζ).
pub fn coul_big_omega(spec: &ProblemSpec, e: C64) -> Result<C64> {
    coulomb_cell(spec)?;
    let k0 = spec.kappa0;
    let s = Solutions::new(spec.m, e, spec.coupling, k0)?;
    let (sn, cs) = zeta_sin_cos(spec.zeta().unwrap_or(0.0));
    match spec.m.abs() {
        1 => {
            let f = s.f1()?;
            Ok(-(f * sn + cs) / ((f * cs - sn) * k0))
        }
        0 => {
            let f = s.f0()?;
            Ok((f * sn - cs) * 2.0 / ((f * cs + sn) * k0))
        }
        _ => s.big_omega(),
    }
}

/// Green function G(x, y; ℰ) of the self-adjoint operator, Im ℰ > 0.
pub fn coul_green(spec: &ProblemSpec, x: f64, y: f64, e: ComplexEnergy) -> Result<C64> {
    coulomb_cell(spec)?;
    check_x(x)?;
    check_x(y)?;
    let ev = e.value();
    if !(ev.im > 0.0) {
        return Err(domain("coul_green", "Im E must be positive; use the density on the real axis"));
    }
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let k0 = spec.kappa0;
    let s = Solutions::new(spec.m, ev, spec.coupling, k0)?;
    let (sn, cs) = zeta_sin_cos(spec.zeta().unwrap_or(0.0));
    match spec.m.abs() {
        1 => {
            // U = C1 sin ζ + C4 cos ζ, D = C4 + f₁C1 = Γ(α)(2K/κ₀)C3, Wr(U, D) = κ₀ω.
            let omega = s.f1()? * cs - sn;
            let u = s.c1(lo)? * sn + s.c4(lo)? * cs;
            let d = gamma(s.alpha)? * s.k * (2.0 / k0) * s.c3(hi)?;
            Ok(-u * d / (omega * k0))
        }
        0 => {
            // U = C1 sin ζ + C2 cos ζ, D = f₀C1 − C2 = Γ(α)C3/2, Wr(U, D) = −κ₀ω/2.
            let omega = s.f0()? * cs + sn;
            let u = s.c1(lo)? * sn + s.c2(lo)? * cs;
            let d = gamma(s.alpha)? * s.c3(hi)? * 0.5;
            Ok(u * d * 2.0 / (omega * k0))
        }
        _ => Ok(s.c3(hi)? * s.c1(lo)? * s.inv_omega()?),
    }
}

/// σ′(E) on E ≥ 0 (zero for E < 0). At E = 0 the one-sided limit is
/// returned; it is +∞ for m = ±1, g = 0, ζ = 0, where σ′ ~ E^{−1/2}.
pub fn coul_density(spec: &ProblemSpec, e: f64) -> Result<f64> {
    let cell = coulomb_cell(spec)?;
    Ok(density_for(spec, &cell, e))
}

fn density_for(spec: &ProblemSpec, cell: &RegimeClass, e: f64) -> f64 {
    if e < 0.0 || !e.is_finite() {
        return 0.0;
    }
    let k0 = spec.kappa0;
    let g = spec.coupling;
    let p = e.sqrt();
    match *cell {
        RegimeClass::CoulUnique { m, .. } => unique_density(m.unsigned_abs(), g, k0, p),
        RegimeClass::CoulFamilyOne { zeta, .. } => {
            let (sn, cs) = zeta_sin_cos(zeta);
            let (a, b) = if p == 0.0 {
                // Limits of Re f₁ and Im f₁ as E → +0.
                let a = if g == 0.0 { 0.0 } else { (g / k0) * (g.abs() / k0).ln() };
                let b = if g < 0.0 { PI * g.abs() / k0 } else { 0.0 };
                if g == 0.0 && sn == 0.0 {
                    return f64::INFINITY;
                }
                (a, b)
            } else {
                let y = g / (2.0 * p);
                let a = if g == 0.0 {
                    0.0
                } else {
                    (g / k0) * (digamma(C64::new(1.0, y)).map(|v| v.re).unwrap_or(f64::NAN) + (2.0 * p / k0).ln())
                };
                let b = if g == 0.0 { p / k0 } else { (PI * g / k0) / (2.0 * PI * y).exp_m1() };
                (a, b)
            };
            let den = (a * cs - sn).powi(2) + (b * cs).powi(2);
            if den == 0.0 {
                return 0.0;
            }
            b / (PI * k0 * den)
        }
        RegimeClass::CoulFamilyZero { zeta, .. } => {
            let (sn, cs) = zeta_sin_cos(zeta);
            let (a, b) = if p == 0.0 {
                let b = match Sign::of(g) {
                    Sign::Positive => 0.0,
                    Sign::Zero => PI / 4.0,
                    Sign::Negative => PI / 2.0,
                };
                if g == 0.0 {
                    // Re f₀ → +∞ as E → +0.
                    return if cs == 0.0 { 2.0 * b / (PI * k0) } else { 0.0 };
                }
                (PSI_ONE - 0.5 * (g.abs() / k0).ln(), b)
            } else {
                let y = g / (2.0 * p);
                let psi = digamma(C64::new(0.5, y)).map(|v| v.re).unwrap_or(f64::NAN);
                let a = PSI_ONE - 0.5 * psi - 0.5 * (2.0 * p / k0).ln();
                let b = (PI / 2.0) / (1.0 + (2.0 * PI * y).exp());
                (a, b)
            };
            let den = (a * cs + sn).powi(2) + (b * cs).powi(2);
            if den == 0.0 {
                return 0.0;
            }
            2.0 * b / (PI * k0 * den)
        }
        _ => 0.0,
    }
}

/// κ₀^{−1−n} |Γ(α)|² (2p)^n e^{−πg/2p} / (2π n!²), α = 1/2 + n/2 + ig/2p.
fn unique_density(n: u32, g: f64, k0: f64, p: f64) -> f64 {
    let gg = factorial(n).powi(2);
    let norm = k0.powi(-1 - n as i32) / (2.0 * PI * gg);
    if p == 0.0 {
        // |Γ(α)|² e^{−πg/2p} (2p)^n → 2π|g|^n for g < 0 and → 0 for g ≥ 0.
        return if g < 0.0 { norm * 2.0 * PI * g.abs().powi(n as i32) } else { 0.0 };
    }
    let alpha = C64::new(0.5 + 0.5 * n as f64, g / (2.0 * p));
    let lg = gamma_ln(alpha).map(|v| v.re).unwrap_or(f64::NAN);
    norm * (2.0 * lg - PI * g / (2.0 * p) + n as f64 * (2.0 * p).ln()).exp()
}

/// τ_k = |g|/(1 + n + 2k) on the hydrogen-like ladder.
fn ladder_tau(g: f64, n: u32, k: usize) -> f64 {
    g.abs() / (1.0 + n as f64 + 2.0 * k as f64)
}

/// Closed-form ladder point ℰ_k = −g²/(1 + n + 2k)² (g < 0).
fn ladder_energy(g: f64, n: u32, k: usize) -> f64 {
    -ladder_tau(g, n, k).powi(2)
}

/// Ladder of the m = ±1 family at ζ = π/2: ℰ_{1,k} = −g²/(4(1+k)²).
fn family_one_pole(g: f64, k: usize) -> f64 {
    ladder_energy(g, 1, k)
}

/// f₁(E) and f₁′(E) for E < 0.
fn f1_real(g: f64, k0: f64, e: f64) -> Result<(f64, f64)> {
    let tau = (-e).sqrt();
    let s = Solutions::new(1, c(e), g, k0)?;
    let f = s.f1()?.re;
    let y = g / (2.0 * tau);
    // f₁′ = [2y³ψ′(1+y) − 2y² + y]/(gκ₀); asymptotic in y for g > 0, τ → 0.
    let d = if g == 0.0 {
        1.0 / (2.0 * tau * k0)
    } else if y > 20.0 {
        let y2 = 1.0 / (y * y);
        (1.0 / 3.0 + y2 * (-1.0 / 15.0 + y2 * (1.0 / 21.0 + y2 * (-1.0 / 15.0 + y2 * 5.0 / 33.0)))) / (g * k0)
    } else {
        (2.0 * y.powi(3) * trigamma(1.0 + y)? - 2.0 * y * y + y) / (g * k0)
    };
    Ok((f, d))
}

/// f₀(E) and f₀′(E) for E < 0.
fn f0_real(g: f64, k0: f64, e: f64) -> Result<(f64, f64)> {
    let tau = (-e).sqrt();
    let s = Solutions::new(0, c(e), g, k0)?;
    let f = s.f0()?.re;
    let d = if g == 0.0 {
        1.0 / (4.0 * tau * tau)
    } else {
        let y = g / (2.0 * tau);
        // f₀′ = [y² − y³ψ′(1/2+y)]/g²
        if y > 20.0 {
            let y2 = 1.0 / (y * y);
            (1.0 / 12.0 + y2 * (-7.0 / 240.0 + y2 * (31.0 / 1344.0 - y2 * 127.0 / 3840.0))) / (g * g)
        } else {
            (y * y - y.powi(3) * trigamma(0.5 + y)?) / (g * g)
        }
    };
    Ok((f, d))
}

/// Roots of the increasing function `h` on the pole ladder (g < 0): one per
/// interval (ℰ_{k−1}, ℰ_k) with ℰ_{−1} = −∞.
fn ladder_roots(
    h: impl Fn(f64) -> Result<(f64, Option<f64>)>,
    pole: impl Fn(usize) -> f64,
    count: usize,
) -> Result<Vec<f64>> {
    (0..count)
        .map(|k| {
            let b = pole(k);
            let a = if k == 0 { f64::NEG_INFINITY } else { pole(k - 1) };
            let scale = if k == 0 { b.abs() } else { b - a };
            increasing_root(&h, a, b, scale)
        })
        .collect()
}

/// Whether tan ζ sits on the critical value `t_crit` (within rounding).
fn is_critical(t: f64, t_crit: f64) -> bool {
    (t - t_crit).abs() <= CRITICAL_TOL * t_crit.abs().max(1.0)
}

/// Discrete atoms of a cell; ladders are truncated to `levels` points.
fn discrete_atoms(spec: &ProblemSpec, cell: &RegimeClass, levels: usize) -> Result<(Vec<Atom>, DiscreteCount)> {
    let k0 = spec.kappa0;
    let g = spec.coupling;
    let ladder = |atoms: Vec<Atom>| Ok((atoms, DiscreteCount::Ladder));
    let none = || Ok((vec![], DiscreteCount::None));
    let one = |atom: Atom| Ok((vec![atom], DiscreteCount::One));
    match *cell {
        RegimeClass::CoulUnique { m, sign } => {
            if sign != Sign::Negative {
                return none();
            }
            let n = m.unsigned_abs();
            let gg = factorial(n).powi(2);
            ladder(
                (0..levels)
                    .map(|k| {
                        let tau = ladder_tau(g, n, k);
                        let nk = 1.0 + n as f64 + 2.0 * k as f64;
                        Atom {
                            energy: -tau * tau,
                            weight: (2.0 * tau / k0).powi(1 + n as i32) * 2.0 * tau
                                * pochhammer(c(1.0 + k as f64), n).re
                                / (nk * gg),
                        }
                    })
                    .collect(),
            )
        }
        RegimeClass::CoulFamilyOne { sign, zeta, .. } => {
            let (sn, cs) = zeta_sin_cos(zeta);
            if cs == 0.0 {
                if sign != Sign::Negative {
                    return none();
                }
                return ladder(
                    (0..levels)
                        .map(|k| {
                            let tau = ladder_tau(g, 1, k);
                            Atom {
                                energy: -tau * tau,
                                weight: 4.0 * tau.powi(3) / (k0 * k0),
                            }
                        })
                        .collect(),
                );
            }
            let t = sn / cs;
            let weight = |e: f64| -> Result<f64> {
                let (_, d) = f1_real(g, k0, e)?;
                Ok(1.0 / (k0 * cs * cs * d))
            };
            let h = |e: f64| -> Result<(f64, Option<f64>)> {
                let (f, d) = f1_real(g, k0, e)?;
                Ok((f - t, Some(d)))
            };
            match sign {
                Sign::Negative => {
                    let roots = ladder_roots(h, |k| family_one_pole(g, k), levels)?;
                    ladder(roots.into_iter().map(|e| Ok(Atom { energy: e, weight: weight(e)? })).collect::<Result<_>>()?)
                }
                Sign::Zero => {
                    if t < 0.0 {
                        let tau = -k0 * t;
                        one(Atom {
                            energy: -tau * tau,
                            weight: 2.0 * tau / (cs * cs),
                        })
                    } else {
                        none()
                    }
                }
                Sign::Positive => {
                    let t_crit = (g / k0) * (g / k0).ln();
                    if is_critical(t, t_crit) {
                        // f₁′(0) = 1/(3gκ₀)
                        one(Atom {
                            energy: 0.0,
                            weight: 3.0 * g / (cs * cs),
                        })
                    } else if t < t_crit {
                        let e = increasing_root(h, f64::NEG_INFINITY, 0.0, (g * g).max(k0 * k0))?;
                        one(Atom { energy: e, weight: weight(e)? })
                    } else {
                        none()
                    }
                }
            }
        }
        RegimeClass::CoulFamilyZero { sign, zeta } => {
            let (sn, cs) = zeta_sin_cos(zeta);
            if cs == 0.0 {
                if sign != Sign::Negative {
                    return none();
                }
                return ladder(
                    (0..levels)
                        .map(|k| {
                            let tau = ladder_tau(g, 0, k);
                            Atom {
                                energy: -tau * tau,
                                weight: 4.0 * tau * tau / (k0 * (1.0 + 2.0 * k as f64)),
                            }
                        })
                        .collect(),
                );
            }
            let t = sn / cs;
            let weight = |e: f64| -> Result<f64> {
                let (_, d) = f0_real(g, k0, e)?;
                Ok(2.0 / (k0 * cs * cs * d))
            };
            let h = |e: f64| -> Result<(f64, Option<f64>)> {
                let (f, d) = f0_real(g, k0, e)?;
                Ok((f + t, Some(d)))
            };
            match sign {
                Sign::Negative => {
                    let roots = ladder_roots(h, |k| ladder_energy(g, 0, k), levels)?;
                    ladder(roots.into_iter().map(|e| Ok(Atom { energy: e, weight: weight(e)? })).collect::<Result<_>>()?)
                }
                Sign::Zero => {
                    let tau = 0.5 * k0 * (2.0 * PSI_ONE - digamma(c(0.5))?.re + 2.0 * t).exp();
                    let e = -tau * tau;
                    one(Atom {
                        energy: e,
                        weight: 8.0 * tau * tau / (k0 * cs * cs),
                    })
                }
                Sign::Positive => {
                    let t_crit = 0.5 * (g / k0).ln() - PSI_ONE;
                    if is_critical(t, t_crit) {
                        // f₀′(0) = 1/(12g²)
                        one(Atom {
                            energy: 0.0,
                            weight: 24.0 * g * g / (k0 * cs * cs),
                        })
                    } else if t > t_crit {
                        let e = increasing_root(h, f64::NEG_INFINITY, 0.0, (g * g).max(k0 * k0))?;
                        one(Atom { energy: e, weight: weight(e)? })
                    } else {
                        none()
                    }
                }
            }
        }
        _ => unreachable!("Coulomb cells only"),
    }
}

/// Spectral measure of a Coulomb cell: the continuum ℝ₊ plus the discrete
/// atoms of the cell (ladders truncated to their lowest `levels` points).
pub fn coul_spectrum(spec: &ProblemSpec, levels: usize) -> Result<SpectralMeasure> {
    let cell = coulomb_cell(spec)?;
    let (atoms, count) = discrete_atoms(spec, &cell, levels)?;
    let density: DensityFn = {
        let spec = *spec;
        Arc::new(move |e: f64| density_for(&spec, &cell, e))
    };
    Ok(SpectralMeasure::new(atoms, count, Support::PositiveHalfLine, Some(density)))
}

fn real_wave(f: impl Fn(f64) -> Result<C64> + Send + Sync + 'static, norm: f64, class: AsymptoticClass) -> RadialWave {
    RadialWave::new(Arc::new(move |x| f(x).map(|v| C64::new(v.re * norm, 0.0))), norm, class)
}

/// √x K_n(2√(gx)) for g > 0: the decaying zero-energy solution.
fn zero_energy_decaying(n: u32, g: f64, x: f64) -> Result<f64> {
    // K_n(t) = (π/2) i^{n+1} H1_n(it)
    let t = 2.0 * (g * x).sqrt();
    let h = bessel(BesselKind::H1, n, C64::new(0.0, t), &ctl())?;
    let phase = C64::i().powu(n + 1);
    Ok(x.sqrt() * (phase * h * (PI / 2.0)).re)
}

/// Normalized eigenfunction (discrete level) or generalized eigenfunction
/// (energy E ≥ 0 on the continuum).
pub fn coul_eigenfunction(spec: &ProblemSpec, which: Selector) -> Result<RadialWave> {
    let cell = coulomb_cell(spec)?;
    let k0 = spec.kappa0;
    let g = spec.coupling;
    let m = spec.m;
    let n = m.unsigned_abs();
    let class = match cell {
        RegimeClass::CoulFamilyOne { zeta, .. } => AsymptoticClass::LinearMixed { zeta },
        RegimeClass::CoulFamilyZero { zeta, .. } => AsymptoticClass::LogMixed {
            zeta,
            log_coefficient: 0.5,
        },
        _ => AsymptoticClass::Power {
            exponent: 0.5 + 0.5 * n as f64,
        },
    };
    let (sn, cs) = zeta_sin_cos(spec.zeta().unwrap_or(0.0));
    match which {
        Selector::Level(k) => {
            let measure = coul_spectrum(spec, k + 1)?;
            let atom = *measure.discrete.get(k).ok_or_else(|| Error::Index {
                index: k,
                reason: format!("the cell has {} discrete level(s)", measure.discrete.len()),
            })?;
            let q = atom.weight.sqrt();
            let e = atom.energy;
            let family = !matches!(cell, RegimeClass::CoulUnique { .. });
            if !family || cs == 0.0 {
                let s = Solutions::at_level(m, e, g, k0, k)?;
                return Ok(real_wave(move |x| s.c1(x), q, class));
            }
            if e == 0.0 {
                // Zero-energy atom at a critical angle, matched to U's small-x form.
                let scale = if n == 1 {
                    2.0 * g.sqrt() * cs
                } else {
                    -cs * k0.sqrt()
                };
                return Ok(real_wave(move |x| Ok(c(scale * zero_energy_decaying(n, g, x)?)), q, class));
            }
            // At a level U is proportional to the decaying solution C3.
            let s = Solutions::new(m, c(e), g, k0)?;
            let scale = if n == 1 {
                gamma(s.alpha)? * s.k * (2.0 / k0) * cs
            } else {
                -gamma(s.alpha)? * 0.5 * cs
            };
            Ok(real_wave(move |x| Ok(scale * s.c3(x)?), q, class))
        }
        Selector::Energy(e) => {
            if !(e > 0.0) || !e.is_finite() {
                return Err(domain(
                    "coul_eigenfunction",
                    format!("energy {e} is off the continuous support (0, inf)"),
                ));
            }
            let rho = density_for(spec, &cell, e).sqrt();
            let s = Solutions::new(m, c(e), g, k0)?;
            match cell {
                RegimeClass::CoulUnique { .. } => Ok(real_wave(move |x| s.c1(x), rho, class)),
                RegimeClass::CoulFamilyOne { .. } => {
                    Ok(real_wave(move |x| Ok(s.c1(x)? * sn + s.c4(x)? * cs), rho, class))
                }
                _ => Ok(real_wave(move |x| Ok(s.c1(x)? * sn + s.c2(x)? * cs), rho, class)),
            }
        }
    }
}
