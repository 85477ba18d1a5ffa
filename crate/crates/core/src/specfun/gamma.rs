//! Gamma-family functions on the complex plane.
//!
//! `ln Γ` and `ψ` use upward recurrence into the Stirling region followed by
//! the asymptotic series; the left half-plane is reached through reflection.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B_2, B_4, …, B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Real part threshold above which the asymptotic series is used directly.
const STIRLING_START: f64 = 15.0;

/// Returns `Some(n)` when `z` is exactly the non-positive integer `n`.
pub(crate) fn nonpositive_integer(z: C64) -> Option<i64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() && z.re > -1e15 {
        Some(z.re as i64)
    } else {
        None
    }
}

fn check_pole(function: &'static str, z: C64) -> Result<()> {
    match nonpositive_integer(z) {
        Some(at) => Err(Error::Pole { function, at }),
        None => Ok(()),
    }
}

/// ln sin(πz), stable for large |Im z|.
fn ln_sin_pi(z: C64) -> C64 {
    let i = C64::i();
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    let ln2i = C64::new(2f64.ln(), PI / 2.0);
    if z.im > 0.0 {
        let q = (i * 2.0 * PI * z).exp();
        -i * PI * z + (1.0 - q).ln() - ln2i
    } else {
        let q = (-i * 2.0 * PI * z).exp();
        i * PI * z + (1.0 - q).ln() - ln2i
    }
}

/// cot(πz), stable for large |Im z|.
fn cot_pi(z: C64) -> C64 {
    let i = C64::i();
    let x = z * PI;
    if z.im >= 0.0 {
        let q = (i * 2.0 * x).exp();
        i * (q + 1.0) / (q - 1.0)
    } else {
        let q = (-i * 2.0 * x).exp();
        i * (1.0 + q) / (1.0 - q)
    }
}

fn ln_gamma_right(z: C64) -> C64 {
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < STIRLING_START {
        acc += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pw = inv;
    let mut series = C64::new(0.0, 0.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pw * (*b / (n * (n - 1.0)));
        pw *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series - acc
}

/// Real parts below which reflection replaces the upward recurrence.
const RECURRENCE_FLOOR: f64 = -1000.0;

/// Principal-branch ln Γ(z): the analytic continuation from the positive
/// real axis with its branch cut along the negative real axis (the
/// convention of the standard `loggamma`).
///
/// The upward recurrence ln Γ(z) = ln Γ(z+N) − Σ ln(z+k) with principal
/// logarithms realizes exactly this branch. Far to the left
/// (Re z < −1000) reflection is used, which fixes the value only modulo
/// 2πi; `exp` reproduces Γ in either case.
pub fn gamma_ln(z: C64) -> Result<C64> {
    check_pole("gamma_ln", z)?;
    if z.re >= RECURRENCE_FLOOR {
        Ok(ln_gamma_right(z))
    } else {
        Ok(C64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    }
}

/// Γ(z).
pub fn gamma(z: C64) -> Result<C64> {
    Ok(gamma_ln(z)?.exp())
}

/// 1/Γ(z), entire: zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    match gamma_ln(z) {
        Ok(l) => (-l).exp(),
        Err(_) => C64::new(0.0, 0.0),
    }
}

/// Real Γ(x) for x > 0 (convenience for normalization constants).
pub fn gamma_real(x: f64) -> f64 {
    gamma(C64::new(x, 0.0)).map(|g| g.re).unwrap_or(f64::INFINITY)
}

/// ψ(z) = Γ′(z)/Γ(z).
pub fn digamma(z: C64) -> Result<C64> {
    check_pole("digamma", z)?;
    if z.re < 0.0 {
        return Ok(digamma_right(1.0 - z) - cot_pi(z) * PI);
    }
    Ok(digamma_right(z))
}

fn digamma_right(z: C64) -> C64 {
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < STIRLING_START {
        acc += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pw = inv2;
    let mut series = C64::new(0.0, 0.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pw * (*b / n);
        pw *= inv2;
    }
    w.ln() - inv * 0.5 - series - acc
}

/// ψ′(z) on the complex plane.
pub fn trigamma_complex(z: C64) -> Result<C64> {
    check_pole("trigamma", z)?;
    if z.re < 0.0 {
        let s = (z * PI).sin();
        return Ok(C64::new(PI * PI, 0.0) / (s * s) - trigamma_right(1.0 - z));
    }
    Ok(trigamma_right(z))
}

fn trigamma_right(z: C64) -> C64 {
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < STIRLING_START {
        acc += (w * w).inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pw = inv2 * inv;
    let mut series = C64::new(0.0, 0.0);
    for b in BERNOULLI.iter() {
        series += pw * *b;
        pw *= inv2;
    }
    inv + inv2 * 0.5 + series + acc
}

/// ψ′(x) for real x.
pub fn trigamma(x: f64) -> Result<f64> {
    trigamma_complex(C64::new(x, 0.0)).map(|v| v.re)
}

/// Rising factorial (a)_n = a(a+1)⋯(a+n−1).
pub fn pochhammer(a: C64, n: u32) -> C64 {
    (0..n).fold(C64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}

/// n! as a float.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Harmonic number H_n = 1 + 1/2 + ⋯ + 1/n.
pub(crate) fn harmonic(n: u32) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}
