//! Oscillator-like radial problem ȟ_m = −∂²_u + u⁻²(m² − 1/4) + λu².
//!
//! Solutions, coefficient functions, Green functions, spectral measures and
//! normalized eigenfunctions for every (m, sign λ, ζ) cell. Energies `W`
//! enter the solution functions as plain complex numbers because the
//! solutions are entire in `W`; Green functions require Im W > 0.
//!
//! Conventions for |m| ≥ 1, λ ≠ 0 (n = |m|, ρ = ϰ²u², α = 1/2 + n/2 − W/4ϰ²):
//!
//! * `O1 = (κ₀u)^{1/2+n} e^{−ρ/2} Φ(α, n+1; ρ)` — regular at the origin;
//! * `O3 = (κ₀u)^{1/2+n} e^{−ρ/2} Ψ(α, n+1; ρ)` — decaying for Im W > 0;
//! * `O4` — the real-entire singular solution, `O4 ~ (κ₀u)^{1/2−n}`;
//! * `O3 = B·O1 + C·O4`, `Wr(O1, O3) = −2κ₀nC = −ω`.
//!
//! For λ = 0 the Bessel forms are used (`O4 ~ −(κ₀u)^{1/2−n}` there), and
//! for m = 0 the logarithmic solution `O2 ~ (κ₀u)^{1/2} ln(κ₀u)` replaces `O4`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::model::{
    classify, zeta_sin_cos, AsymptoticClass, Atom, ComplexEnergy, DiscreteCount, ProblemSpec, RadialWave,
    RegimeClass, Selector, SpectralMeasure, Support, Theory,
};
use crate::roots::increasing_root;
use crate::specfun::{
    bessel, digamma, factorial, gamma, kummer_companion, kummer_m, kummer_m_param_derivative, nonpositive_integer,
    pochhammer, rgamma, trigamma, tricomi_u, BesselKind, SeriesControl, PSI_ONE,
};

/// Named oscillator solutions; `O2` exists only for m = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OscKind {
    O1,
    O2,
    O3,
    O4,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// ϰ² = √λ on the branch continuous from Im λ < 0: the principal root,
/// except −i√|λ| on the negative axis (so ϰ = e^{−iπ/4}|λ|^{1/4} for λ < 0).
pub fn varkappa_squared(lambda: C64) -> C64 {
    if lambda.im == 0.0 && lambda.re < 0.0 {
        C64::new(0.0, -(-lambda.re).sqrt())
    } else {
        lambda.sqrt()
    }
}

/// ϰ = λ^{1/4} on the branch of [`varkappa_squared`].
pub fn varkappa(lambda: C64) -> C64 {
    varkappa_squared(lambda).sqrt()
}

/// Parameters of the confluent-hypergeometric representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscParameters {
    pub alpha: C64,
    pub alpha_minus: C64,
    pub beta: u32,
    pub varkappa: C64,
    pub rho: C64,
}

/// α, α₋, β, ϰ and ρ at (m, u, W, λ); λ must be non-zero.
pub fn osc_parameters(m: i32, u: f64, w: C64, lambda: impl Into<C64>) -> Result<OscParameters> {
    let lambda = lambda.into();
    if lambda == ZERO {
        return Err(domain("osc_parameters", "the confluent representation needs lambda != 0"));
    }
    let cf = Confluent::new(m, w, lambda, 1.0);
    Ok(OscParameters {
        alpha: cf.alpha,
        alpha_minus: cf.alpha - cf.n as f64,
        beta: cf.n + 1,
        varkappa: cf.vk2.sqrt(),
        rho: cf.rho(u),
    })
}

/// Confluent-hypergeometric solutions (λ ≠ 0).
#[derive(Debug, Clone, Copy)]
struct Confluent {
    n: u32,
    kappa0: f64,
    vk2: C64,
    alpha: C64,
}

impl Confluent {
    fn new(m: i32, w: C64, lambda: C64, kappa0: f64) -> Self {
        let n = m.unsigned_abs();
        let vk2 = varkappa_squared(lambda);
        Self {
            n,
            kappa0,
            vk2,
            alpha: c(0.5 + n as f64 / 2.0) - w / (vk2 * 4.0),
        }
    }

    fn beta(&self) -> C64 {
        c(self.n as f64 + 1.0)
    }

    /// ln(κ₀/ϰ)
    fn ln_ratio(&self) -> C64 {
        c(self.kappa0.ln()) - self.vk2.ln() * 0.5
    }

    fn rho(&self, u: f64) -> C64 {
        self.vk2 * (u * u)
    }

    /// (κ₀u)^{1/2+n} e^{−ρ/2}
    fn prefactor(&self, u: f64) -> C64 {
        ((0.5 + self.n as f64) * (self.kappa0 * u).ln() - self.rho(u) * 0.5).exp()
    }

    fn o1(&self, u: f64) -> Result<C64> {
        Ok(self.prefactor(u) * kummer_m(self.alpha, self.beta(), self.rho(u), &ctl())?)
    }

    fn o3(&self, u: f64) -> Result<C64> {
        Ok(self.prefactor(u) * tricomi_u(self.alpha, self.n as i32 + 1, self.rho(u), &ctl())?)
    }

    /// Real-entire singular solution for n ≥ 1.
    fn o4(&self, u: f64) -> Result<C64> {
        // ℓ = ln ρ − 2 ln(κ₀u) = −2 ln(κ₀/ϰ)
        let ell = -self.ln_ratio() * 2.0;
        let (h, _) = kummer_companion(self.alpha, self.n, self.rho(u), ell, &ctl())?;
        let scale = (ell * self.n as f64).exp() / factorial(self.n - 1);
        Ok(self.prefactor(u) * scale * h)
    }

    /// Logarithmic solution for n = 0.
    fn o2(&self, u: f64) -> Result<C64> {
        let d = kummer_m_param_derivative(self.alpha, ONE, self.rho(u), 0.5, 1.0, &ctl())?;
        Ok(self.prefactor(u) * d + self.o1(u)? * (self.kappa0 * u).ln())
    }

    /// f = ω₀/2 = ln(κ₀/ϰ) + ψ(1) − ψ(α)/2 for n = 0.
    fn family_function(&self) -> Result<C64> {
        Ok(self.ln_ratio() + PSI_ONE - digamma(self.alpha)? * 0.5)
    }

    /// f·O1 − O2 = Γ(α)O3/2 for n = 0 (decaying for Im W > 0).
    fn decaying(&self, u: f64) -> Result<C64> {
        Ok(gamma(self.alpha)? * self.o3(u)? * 0.5)
    }

    /// Ω = (1−α)_n [4 ln(κ₀/ϰ) − ψ(α) − ψ(α₋)] / (4κ₀ (κ₀/ϰ)^{2n} Γ²(β)) for n ≥ 1.
    fn big_omega(&self) -> Result<C64> {
        let n = self.n;
        let am = self.alpha - n as f64;
        let l = self.ln_ratio();
        let bracket = l * 4.0 - digamma(self.alpha)? - digamma(am)?;
        let g = factorial(n);
        Ok(pochhammer(ONE - self.alpha, n) * bracket * (-l * (2.0 * n as f64)).exp() / (4.0 * self.kappa0 * g * g))
    }
}

/// λ = 0 Bessel-form solutions, K = √W with Im K ≥ 0.
#[derive(Debug, Clone, Copy)]
struct Free {
    n: u32,
    kappa0: f64,
    w: C64,
    k: C64,
}

impl Free {
    fn new(m: i32, w: C64, kappa0: f64) -> Self {
        Self {
            n: m.unsigned_abs(),
            kappa0,
            w,
            k: w.sqrt(),
        }
    }

    fn bessel(&self, kind: BesselKind, u: f64) -> Result<C64> {
        bessel(kind, self.n, self.k * u, &ctl())
    }

    /// D₁ u^{1/2} J_n(Ku), D₁ = κ₀^{1/2} Γ(β) (K/2κ₀)^{−n}.
    fn o1(&self, u: f64) -> Result<C64> {
        let n = self.n;
        if self.k == ZERO {
            return Ok(c((self.kappa0 * u).powf(0.5 + n as f64)));
        }
        let d1 = self.kappa0.sqrt() * factorial(n) * (self.k / (2.0 * self.kappa0)).powi(-(n as i32));
        Ok(d1 * u.sqrt() * self.bessel(BesselKind::J, u)?)
    }

    /// D₃ = π κ₀^{1/2} (K/2κ₀)^n / Γ(n); for n = 0 the m = 0 normalization is used instead.
    fn d3(&self) -> C64 {
        PI * self.kappa0.sqrt() * (self.k / (2.0 * self.kappa0)).powu(self.n) / factorial(self.n - 1)
    }

    fn o3(&self, u: f64) -> Result<C64> {
        if self.k == ZERO {
            return Err(domain("osc_solution", "O3 is undefined at W = 0 for lambda = 0"));
        }
        if self.n == 0 {
            let s = (self.kappa0 * u).sqrt();
            return Ok(C64::new(0.0, -PI / 2.0) * s * self.bessel(BesselKind::H1, u)?);
        }
        Ok(C64::i() * self.d3() * u.sqrt() * self.bessel(BesselKind::H1, u)?)
    }

    /// D₃ u^{1/2} [Y_n(Ku) − (2/π) J_n(Ku) ln(K/κ₀)], ~ −(κ₀u)^{1/2−n}.
    fn o4(&self, u: f64) -> Result<C64> {
        if self.k == ZERO {
            return Ok(c(-(self.kappa0 * u).powf(0.5 - self.n as f64)));
        }
        let y = self.bessel(BesselKind::Y, u)?;
        let j = self.bessel(BesselKind::J, u)?;
        Ok(self.d3() * u.sqrt() * (y - j * (self.k / self.kappa0).ln() * (2.0 / PI)))
    }

    /// ω₀₀ = iπ/2 + ψ(1) − ln(K/2κ₀) for m = 0.
    fn family_function(&self) -> Result<C64> {
        if self.k == ZERO {
            return Err(domain("osc_family_function", "W = 0 is a branch point for lambda = 0"));
        }
        Ok(C64::new(PSI_ONE, PI / 2.0) - (self.k / (2.0 * self.kappa0)).ln())
    }

    /// (κ₀u)^{1/2} [J₀(Ku) ln(κ₀u) + Σ_{k≥1} (−1)^{k+1} H_k (Wu²/4)^k / (k!)²] for m = 0.
    fn o2(&self, u: f64) -> Result<C64> {
        let s = (self.kappa0 * u).sqrt();
        if (self.k * u).norm() > 4.0 {
            return Ok(self.o3(u)? + self.family_function()? * self.o1(u)?);
        }
        let q = self.w * (u * u / 4.0);
        let mut t = ONE; // (−q)^k / (k!)², sign folded in below
        let mut harmonic = 0.0;
        let mut sum = ZERO;
        for k in 1..200 {
            let kf = k as f64;
            t = t * (-q) / (kf * kf);
            harmonic += 1.0 / kf;
            let term = -t * harmonic;
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        Ok(s * (self.bessel(BesselKind::J, u)? * (self.kappa0 * u).ln() + sum))
    }

    /// f·O1 − O2 = −O3 for m = 0.
    fn decaying(&self, u: f64) -> Result<C64> {
        Ok(-self.o3(u)?)
    }

    /// Ω = π(W/4κ₀²)^n [i − (2/π) ln(K/κ₀)] / (2κ₀ Γ²(β)) for n ≥ 1.
    fn big_omega(&self) -> Result<C64> {
        let g = factorial(self.n);
        let lead = (self.w / (4.0 * self.kappa0 * self.kappa0)).powu(self.n) * PI / (2.0 * self.kappa0 * g * g);
        Ok(lead * (C64::i() - (self.k / self.kappa0).ln() * (2.0 / PI)))
    }
}

fn check_u(u: f64) -> Result<()> {
    if u > 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(domain("osc_solution", format!("u must be positive and finite, got {u}")))
    }
}

/// Value of the named solution at u > 0.
///
/// `O2` is only defined for m = 0 and `O4` only for |m| ≥ 1. O1, O2 and O4
/// are real for real W and real λ.
pub fn osc_solution(kind: OscKind, m: i32, u: f64, w: C64, lambda: impl Into<C64>, kappa0: f64) -> Result<C64> {
    check_u(u)?;
    let lambda = lambda.into();
    match kind {
        OscKind::O2 if m != 0 => return Err(domain("osc_solution", "O2 exists only for m = 0")),
        OscKind::O4 if m == 0 => return Err(domain("osc_solution", "O4 exists only for |m| >= 1; use O2 for m = 0")),
        _ => {}
    }
    if lambda == ZERO {
        let f = Free::new(m, w, kappa0);
        match kind {
            OscKind::O1 => f.o1(u),
            OscKind::O2 => f.o2(u),
            OscKind::O3 => f.o3(u),
            OscKind::O4 => f.o4(u),
        }
    } else {
        let cf = Confluent::new(m, w, lambda, kappa0);
        match kind {
            OscKind::O1 => cf.o1(u),
            OscKind::O2 => cf.o2(u),
            OscKind::O3 => cf.o3(u),
            OscKind::O4 => cf.o4(u),
        }
    }
}

/// Coefficients of `O3 = B·O1 + C·O4` together with `A`, `ω = −Wr(O1, O3)`
/// and the Green-function coefficient Ω (σ′ = (1/π) Im Ω on the real axis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscCoefficients {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub omega: C64,
    pub big_omega: C64,
}

/// rgamma(x)·ψ(y) where y − x is a non-negative integer, with the finite
/// limit (−1)^{K+1} K! when x = −K and y are both poles.
fn rgamma_times_digamma(x: C64, y: C64) -> Result<C64> {
    match (nonpositive_integer(x), nonpositive_integer(y)) {
        (Some(k), Some(_)) => {
            let kk = (-k) as u32;
            let sign = if kk % 2 == 0 { -1.0 } else { 1.0 };
            Ok(c(sign * factorial(kk)))
        }
        (Some(_), None) => Ok(ZERO),
        _ => Ok(rgamma(x) * digamma(y)?),
    }
}

/// A, B, C and ω for |m| ≥ 1, λ ≠ 0. At the bound-state points α = −k the
/// coefficient C vanishes (ω = 0); this is reported as a pole.
pub fn osc_coefficients(m: i32, w: C64, lambda: impl Into<C64>, kappa0: f64) -> Result<OscCoefficients> {
    let lambda = lambda.into();
    if m == 0 || lambda == ZERO {
        return Err(domain("osc_coefficients", "defined for |m| >= 1 and lambda != 0"));
    }
    let cf = Confluent::new(m, w, lambda, kappa0);
    if let Some(at) = nonpositive_integer(cf.alpha) {
        return Err(Error::Pole {
            function: "osc_coefficients",
            at,
        });
    }
    let n = cf.n;
    let nf = n as f64;
    let am = cf.alpha - nf;
    let l = cf.ln_ratio();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let gb = factorial(n);
    let b = (-sign / (2.0 * gb))
        * (rgamma_times_digamma(am, am)? + rgamma_times_digamma(am, cf.alpha)? - l * 4.0 * rgamma(am));
    let cc = (l * (2.0 * nf)).exp() * factorial(n - 1) * rgamma(cf.alpha);
    let a = (-l * (2.0 * nf)).exp() * sign * pochhammer(ONE - cf.alpha, n) / gb;
    Ok(OscCoefficients {
        a,
        b,
        c: cc,
        omega: cc * (2.0 * kappa0 * nf),
        big_omega: cf.big_omega()?,
    })
}

/// Family function of the m = 0 extensions: ω₀/2 for λ ≠ 0, ω₀₀ for λ = 0.
/// Discrete levels solve `f(E) = −tan ζ`.
pub fn osc_family_function(w: C64, lambda: impl Into<C64>, kappa0: f64) -> Result<C64> {
    let lambda = lambda.into();
    if lambda == ZERO {
        Free::new(0, w, kappa0).family_function()
    } else {
        Confluent::new(0, w, lambda, kappa0).family_function()
    }
}

fn oscillator_cell(spec: &ProblemSpec) -> Result<RegimeClass> {
    if spec.theory != Theory::Oscillator {
        return Err(Error::Validation("expected an oscillator specification".into()));
    }
    classify(spec)
}

/// Ω(W): the coefficient of the product of regular solutions in the Green
/// function, so that σ′(E) = (1/π) Im Ω(E + i0). For m = 0 the regular
/// solution is the extension's U_ζ.
pub fn osc_big_omega(spec: &ProblemSpec, w: C64) -> Result<C64> {
    oscillator_cell(spec)?;
    let (l, k0) = (spec.coupling, spec.kappa0);
    if spec.m != 0 {
        return if l == 0.0 {
            Free::new(spec.m, w, k0).big_omega()
        } else {
            Confluent::new(spec.m, w, c(l), k0).big_omega()
        };
    }
    let f = osc_family_function(w, l, k0)?;
    let (s, cs) = zeta_sin_cos(spec.zeta().unwrap_or(0.0));
    Ok((f * s - cs) / ((f * cs + s) * k0))
}

/// Green function G(u, v; W) of the self-adjoint operator, Im W > 0.
pub fn osc_green(spec: &ProblemSpec, u: f64, v: f64, w: ComplexEnergy) -> Result<C64> {
    oscillator_cell(spec)?;
    check_u(u)?;
    check_u(v)?;
    let wv = w.value();
    if !(wv.im > 0.0) {
        return Err(domain("osc_green", "Im W must be positive; use the density on the real axis"));
    }
    let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
    let (l, k0) = (spec.coupling, spec.kappa0);
    let nf = spec.m.unsigned_abs() as f64;
    if spec.m != 0 {
        return if l == 0.0 {
            let f = Free::new(spec.m, wv, k0);
            Ok(f.o3(hi)? * f.o1(lo)? / (2.0 * k0 * nf))
        } else {
            let cf = Confluent::new(spec.m, wv, c(l), k0);
            // 1/ω = Γ(α) / (2κ₀ n (κ₀/ϰ)^{2n} Γ(n))
            let inv_omega =
                gamma(cf.alpha)? * (-cf.ln_ratio() * (2.0 * nf)).exp() / (2.0 * k0 * nf * factorial(cf.n - 1));
            Ok(cf.o3(hi)? * cf.o1(lo)? * inv_omega)
        };
    }
    let (s, cs) = zeta_sin_cos(spec.zeta().unwrap_or(0.0));
    let (f, u_lo, dec_hi) = if l == 0.0 {
        let fr = Free::new(0, wv, k0);
        (fr.family_function()?, fr.o1(lo)? * s + fr.o2(lo)? * cs, fr.decaying(hi)?)
    } else {
        let cf = Confluent::new(0, wv, c(l), k0);
        (cf.family_function()?, cf.o1(lo)? * s + cf.o2(lo)? * cs, cf.decaying(hi)?)
    };
    let omega_zeta = f * cs + s;
    Ok(u_lo * dec_hi / (omega_zeta * k0))
}

/// ẽ(coth(πẽ) + 1) = 2ẽ/(1 − e^{−2πẽ}), finite at ẽ = 0 and free of
/// cancellation for ẽ ≪ 0.
fn x_coth_plus_x(x: f64) -> f64 {
    if (PI * x).abs() < 1e-8 {
        1.0 / PI + x
    } else {
        -2.0 * x / (-2.0 * PI * x).exp_m1()
    }
}

/// (1 + tanh(πẽ))/2 = 1/(1 + e^{−2πẽ}).
fn half_one_plus_tanh(x: f64) -> f64 {
    1.0 / (1.0 + (-2.0 * PI * x).exp())
}

/// σ′(E) for the continuous cells; 0 off the support and for discrete cells.
pub fn osc_density(spec: &ProblemSpec, e: f64) -> Result<f64> {
    let cell = oscillator_cell(spec)?;
    Ok(density_for(spec, &cell, e))
}

fn density_for(spec: &ProblemSpec, cell: &RegimeClass, e: f64) -> f64 {
    let k0 = spec.kappa0;
    let lam = spec.coupling;
    let n = spec.m.unsigned_abs();
    let g2 = factorial(n).powi(2);
    match *cell {
        RegimeClass::OscDiscrete { .. } | RegimeClass::OscFamilyDiscrete { .. } => 0.0,
        RegimeClass::OscFree { .. } => {
            if e <= 0.0 {
                0.0
            } else {
                (e / (4.0 * k0 * k0)).powi(n as i32) / (2.0 * k0 * g2)
            }
        }
        RegimeClass::OscInverted { .. } => {
            let s = (-lam).sqrt();
            let et = e / (4.0 * s);
            let base = (s / (k0 * k0)).powi(n as i32);
            if n % 2 == 1 {
                let h = (n - 1) / 2;
                let q: f64 = base * (1..=h).map(|l| (l * l) as f64 + et * et).product::<f64>();
                q * x_coth_plus_x(et) / (4.0 * k0 * g2)
            } else {
                let h = n / 2;
                let q: f64 = base * (0..h).map(|l| (l as f64 + 0.5).powi(2) + et * et).product::<f64>();
                q * 2.0 * half_one_plus_tanh(et) / (4.0 * k0 * g2)
            }
        }
        RegimeClass::OscFamilyInverted { zeta } => {
            let s = (-lam).sqrt();
            let et = e / (4.0 * s);
            let b = half_one_plus_tanh(et);
            let psi = digamma(C64::new(0.5, et)).map(|z| z.re).unwrap_or(f64::NAN);
            let a = 2.0 * (k0 * s.powf(-0.5)).ln() + 2.0 * PSI_ONE - psi;
            let (sn, cs) = zeta_sin_cos(zeta);
            (2.0 / k0) * b / ((a * cs + 2.0 * sn).powi(2) + (PI * b * cs).powi(2))
        }
        RegimeClass::OscFamilyFree { zeta } => {
            if e <= 0.0 {
                return 0.0;
            }
            let g = 2.0 * PSI_ONE - (e / (4.0 * k0 * k0)).ln();
            let (sn, cs) = zeta_sin_cos(zeta);
            (2.0 / k0) / ((g * cs + 2.0 * sn).powi(2) + (PI * cs).powi(2))
        }
        _ => 0.0,
    }
}

/// Levels of the m = 0, λ > 0 ladder at ζ = π/2: ℰ_k = 2√λ(1 + 2k).
fn family_pole(lam: f64, k: usize) -> f64 {
    2.0 * lam.sqrt() * (1.0 + 2.0 * k as f64)
}

/// f(E) and f′(E) = ψ′(α)/(8√λ) on the real axis (m = 0, λ > 0).
fn family_real(lam: f64, k0: f64, e: f64) -> Result<(f64, f64)> {
    let cf = Confluent::new(0, c(e), c(lam), k0);
    let f = cf.family_function()?.re;
    let d = trigamma(cf.alpha.re)? / (8.0 * lam.sqrt());
    Ok((f, d))
}

/// Discrete levels E_k(ζ), k < count, for m = 0, λ > 0, |ζ| < π/2.
fn family_levels(lam: f64, k0: f64, zeta: f64, count: usize) -> Result<Vec<(f64, f64)>> {
    let (s, cs) = zeta_sin_cos(zeta);
    let t = s / cs;
    let scale = 2.0 * lam.sqrt();
    (0..count)
        .map(|k| {
            let a = if k == 0 { f64::NEG_INFINITY } else { family_pole(lam, k - 1) };
            let b = family_pole(lam, k);
            let e = increasing_root(
                |x| {
                    let (f, d) = family_real(lam, k0, x)?;
                    Ok((f + t, Some(d)))
                },
                a,
                b,
                scale,
            )
            .map_err(|err| match err {
                // E₀(ζ) ~ −exp(2 tan ζ): close to ζ = π/2 it leaves the floating-point range.
                Error::Bracket { .. } if k == 0 => domain(
                    "osc_spectrum",
                    format!("the ground state at tan(zeta) = {t:e} lies below the floating-point range"),
                ),
                err => err,
            })?;
            let (_, d) = family_real(lam, k0, e)?;
            Ok((e, 1.0 / (k0 * cs * cs * d)))
        })
        .collect()
}

/// Bound state of the m = 0, λ = 0 family: E₋ = −4κ₀² e^{2(ψ(1) + tan θ)}.
fn free_bound_state(k0: f64, zeta: f64) -> Option<Atom> {
    let (s, cs) = zeta_sin_cos(zeta);
    if cs == 0.0 {
        return None;
    }
    let e = -4.0 * k0 * k0 * (2.0 * (PSI_ONE + s / cs)).exp();
    Some(Atom {
        energy: e,
        weight: 2.0 * e.abs() / (k0 * cs * cs),
    })
}

/// Spectral measure of an oscillator cell; infinite ladders are truncated
/// to their lowest `levels` points.
pub fn osc_spectrum(spec: &ProblemSpec, levels: usize) -> Result<SpectralMeasure> {
    let cell = oscillator_cell(spec)?;
    let k0 = spec.kappa0;
    let lam = spec.coupling;
    let n = spec.m.unsigned_abs();
    let density = {
        let spec = *spec;
        Arc::new(move |e: f64| density_for(&spec, &cell, e)) as crate::model::DensityFn
    };
    Ok(match cell {
        RegimeClass::OscDiscrete { .. } => {
            let sl = lam.sqrt();
            let g = factorial(n);
            let atoms = (0..levels)
                .map(|k| Atom {
                    energy: 2.0 * sl * (1.0 + n as f64 + 2.0 * k as f64),
                    weight: (sl / (k0 * k0)).powi(n as i32) * 2.0 * sl * pochhammer(c(1.0 + k as f64), n).re
                        / (k0 * g * g),
                })
                .collect();
            SpectralMeasure::new(atoms, DiscreteCount::Ladder, Support::Empty, None)
        }
        RegimeClass::OscInverted { .. } | RegimeClass::OscFamilyInverted { .. } => {
            SpectralMeasure::new(vec![], DiscreteCount::None, Support::Real, Some(density))
        }
        RegimeClass::OscFree { .. } => {
            SpectralMeasure::new(vec![], DiscreteCount::None, Support::PositiveHalfLine, Some(density))
        }
        RegimeClass::OscFamilyDiscrete { zeta } => {
            let atoms = if zeta_sin_cos(zeta).1 == 0.0 {
                (0..levels)
                    .map(|k| Atom {
                        energy: family_pole(lam, k),
                        weight: 2.0 * lam.sqrt() / k0,
                    })
                    .collect()
            } else {
                family_levels(lam, k0, zeta, levels)?
                    .into_iter()
                    .map(|(energy, weight)| Atom { energy, weight })
                    .collect()
            };
            SpectralMeasure::new(atoms, DiscreteCount::Ladder, Support::Empty, None)
        }
        RegimeClass::OscFamilyFree { zeta } => {
            let atoms: Vec<Atom> = free_bound_state(k0, zeta).into_iter().collect();
            let count = if atoms.is_empty() { DiscreteCount::None } else { DiscreteCount::One };
            SpectralMeasure::new(atoms, count, Support::PositiveHalfLine, Some(density))
        }
        _ => unreachable!("oscillator cells only"),
    })
}

fn real_wave(f: impl Fn(f64) -> Result<C64> + Send + Sync + 'static, norm: f64, class: AsymptoticClass) -> RadialWave {
    RadialWave::new(Arc::new(move |u| f(u).map(|v| C64::new(v.re * norm, 0.0))), norm, class)
}

/// Normalized eigenfunction (discrete level) or generalized eigenfunction
/// (energy on the continuous support).
pub fn osc_eigenfunction(spec: &ProblemSpec, which: Selector) -> Result<RadialWave> {
    let cell = oscillator_cell(spec)?;
    let k0 = spec.kappa0;
    let lam = spec.coupling;
    let m = spec.m;
    let n = m.unsigned_abs();
    let power = AsymptoticClass::Power { exponent: 0.5 + n as f64 };
    let log_class = |zeta| AsymptoticClass::LogMixed {
        zeta,
        log_coefficient: 1.0,
    };
    let no_levels = |index| Error::Index {
        index,
        reason: "this cell has no discrete spectrum".into(),
    };
    let off_support = |e: f64| domain("osc_eigenfunction", format!("energy {e} is off the continuous support"));
    match (cell, which) {
        (RegimeClass::OscDiscrete { .. }, Selector::Level(k)) => {
            let atom = osc_spectrum(spec, k + 1)?.discrete[k];
            let mut cf = Confluent::new(m, c(atom.energy), c(lam), k0);
            cf.alpha = c(-(k as f64));
            Ok(real_wave(move |u| cf.o1(u), atom.weight.sqrt(), power))
        }
        (RegimeClass::OscFamilyDiscrete { zeta }, Selector::Level(k)) => {
            let atom = osc_spectrum(spec, k + 1)?.discrete[k];
            let (_, cs) = zeta_sin_cos(zeta);
            let class = log_class(zeta);
            if cs == 0.0 {
                let mut cf = Confluent::new(0, c(atom.energy), c(lam), k0);
                cf.alpha = c(-(k as f64));
                return Ok(real_wave(move |u| cf.o1(u), atom.weight.sqrt(), class));
            }
            // At a level, U_ζ = O1 sin ζ + O2 cos ζ = −(cos ζ Γ(α)/2) O3.
            let cf = Confluent::new(0, c(atom.energy), c(lam), k0);
            let scale = -cs * gamma(cf.alpha)? * 0.5;
            Ok(real_wave(move |u| Ok(scale * cf.o3(u)?), atom.weight.sqrt(), class))
        }
        (RegimeClass::OscFamilyFree { zeta }, Selector::Level(0)) => {
            let atom = free_bound_state(k0, zeta).ok_or_else(|| no_levels(0))?;
            let (_, cs) = zeta_sin_cos(zeta);
            let fr = Free::new(0, c(atom.energy), k0);
            // At the bound state U = O1 sin θ + O2 cos θ = cos θ · O3.
            Ok(real_wave(move |u| Ok(fr.o3(u)? * cs), atom.weight.sqrt(), log_class(zeta)))
        }
        (RegimeClass::OscFamilyFree { .. }, Selector::Level(k)) => Err(Error::Index {
            index: k,
            reason: "at most one bound state exists for lambda = 0".into(),
        }),
        (_, Selector::Level(k)) => Err(no_levels(k)),
        (RegimeClass::OscDiscrete { .. } | RegimeClass::OscFamilyDiscrete { .. }, Selector::Energy(e)) => {
            Err(off_support(e))
        }
        (cell, Selector::Energy(e)) => {
            let support = osc_spectrum(spec, 0)?.support;
            if !support.contains(e) || (support == Support::PositiveHalfLine && e == 0.0) {
                return Err(off_support(e));
            }
            let rho = density_for(spec, &cell, e).sqrt();
            let w = c(e);
            match cell {
                RegimeClass::OscInverted { .. } => {
                    let cf = Confluent::new(m, w, c(lam), k0);
                    Ok(real_wave(move |u| cf.o1(u), rho, power))
                }
                RegimeClass::OscFree { .. } => {
                    let fr = Free::new(m, w, k0);
                    Ok(real_wave(move |u| fr.o1(u), rho, power))
                }
                RegimeClass::OscFamilyInverted { zeta } | RegimeClass::OscFamilyFree { zeta } => {
                    let (s, cs) = zeta_sin_cos(zeta);
                    let spec = *spec;
                    Ok(real_wave(
                        move |u| {
                            Ok(osc_solution(OscKind::O1, 0, u, w, spec.coupling, spec.kappa0)? * s
                                + osc_solution(OscKind::O2, 0, u, w, spec.coupling, spec.kappa0)? * cs)
                        },
                        rho,
                        log_class(zeta),
                    ))
                }
                _ => Err(off_support(e)),
            }
        }
    }
}
