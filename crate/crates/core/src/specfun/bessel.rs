//! Integer-order Bessel functions J_n, Y_n and H_n⁽¹⁾ = J_n + iY_n of complex argument.
//!
//! Small |z|: ascending series. Large |z|: Hankel expansions. In between,
//! J is continued outward from the series region and H⁽¹⁾ inward from the
//! asymptotic region (each is the dominant solution in its walking
//! direction); Y follows from (H⁽¹⁾ − J)/i.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::gamma::{factorial, harmonic, EULER_GAMMA};
use super::kummer::SeriesControl;
use super::taylor::{walk, BesselOde};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BesselKind {
    J,
    Y,
    H1,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const SERIES_Y_RADIUS: f64 = 4.0;
const HANKEL_RADIUS: f64 = 25.0;

struct Series {
    value: C64,
    deriv: C64,
    condition: f64,
}

fn j_series(n: u32, z: C64, ctl: &SeriesControl) -> Series {
    let half = z * 0.5;
    let q = -half * half;
    let lead = half.powu(n) / factorial(n);
    let mut t = C64::new(1.0, 0.0);
    let mut sum = t;
    let mut dsum = t * n as f64; // Σ (n+2k) t_k, divided by z at the end
    let mut abs_sum = 1.0;
    let limit = ctl.max_terms.max(2 * z.norm() as usize + 20);
    for k in 1..limit {
        let kf = k as f64;
        t = t * q / (kf * (n as f64 + kf));
        sum += t;
        dsum += t * (n as f64 + 2.0 * kf);
        abs_sum += t.norm();
        if t.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    Series {
        value: lead * sum,
        deriv: lead * dsum / z,
        condition: abs_sum / sum.norm().max(f64::MIN_POSITIVE),
    }
}

/// Ascending series for Y_n (ln-series form).
fn y_series(n: u32, z: C64, ctl: &SeriesControl) -> C64 {
    let half = z * 0.5;
    let q = half * half;
    let mut finite = ZERO;
    for k in 0..n {
        finite += q.powu(k) * (factorial(n - k - 1) / factorial(k));
    }
    finite *= -half.powi(-(n as i32)) / PI;
    let j = j_series(n, z, ctl).value;
    let log_part = j * half.ln() * (2.0 / PI);
    let mut t = C64::new(1.0 / factorial(n), 0.0); // (−q)^k / (k!(n+k)!)
    let mut sum = ZERO;
    let limit = ctl.max_terms.max(2 * z.norm() as usize + 20);
    for k in 0..limit {
        let psi = (-EULER_GAMMA + harmonic(k as u32)) + (-EULER_GAMMA + harmonic(n + k as u32));
        let term = t * psi;
        sum += term;
        if k > 2 && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        let kf = k as f64 + 1.0;
        t = t * (-q) / (kf * (n as f64 + kf));
    }
    finite + log_part - half.powu(n) * sum / PI
}

/// Hankel expansions of H⁽¹⁾ and its derivative; `None` if not converged.
fn hankel1_asymptotic(n: u32, z: C64, tol: f64) -> Option<(C64, C64)> {
    let nu = n as f64;
    let mu = 4.0 * nu * nu;
    let i = C64::i();
    // H(z) = sqrt(2/(πz)) e^{iω} P(z), P = Σ i^k a_k / z^k
    let mut a = 1.0;
    let mut p = C64::new(1.0, 0.0);
    let mut dp = ZERO; // dP/dz
    let mut ik = C64::new(1.0, 0.0);
    let zinv = z.inv();
    let mut zk = C64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    let mut converged = false;
    for k in 1..200 {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0);
        ik *= i;
        zk *= zinv;
        let term = ik * a * zk;
        if term == ZERO {
            converged = true;
            break;
        }
        p += term;
        dp += -term * kf * zinv;
        let mag = term.norm();
        if mag <= tol * p.norm() {
            converged = true;
            break;
        }
        if mag > last && kf > nu + 2.0 {
            return None;
        }
        last = mag;
    }
    if !converged {
        return None;
    }
    let omega = z - nu * PI / 2.0 - PI / 4.0;
    let pre = (2.0 / (PI * z)).sqrt() * (i * omega).exp();
    let h = pre * p;
    // d/dz [sqrt(2/(πz)) e^{iω}] = pre (i − 1/(2z))
    let dh = pre * (p * (i - zinv * 0.5) + dp);
    Some((h, dh))
}

fn j_upper(n: u32, z: C64, ctl: &SeriesControl) -> Result<(C64, C64)> {
    let s = j_series(n, z, ctl);
    if s.condition * f64::EPSILON <= ctl.rel_tol {
        return Ok((s.value, s.deriv));
    }
    let r = z.norm();
    if r > HANKEL_RADIUS && z.im.abs() < 1.0 {
        // Near the real axis J is oscillatory; (H1 + H2)/2 with H2(z) = conj H1(conj z).
        if let (Some((h1, d1)), Some((h2c, d2c))) = (
            hankel1_asymptotic(n, z, ctl.rel_tol),
            hankel1_asymptotic(n, z.conj(), ctl.rel_tol),
        ) {
            return Ok(((h1 + h2c.conj()) * 0.5, (d1 + d2c.conj()) * 0.5));
        }
    }
    let dir = z / r;
    let mut r0 = r.min(8.0);
    for _ in 0..60 {
        let z0 = dir * r0;
        let s0 = j_series(n, z0, ctl);
        if s0.condition * f64::EPSILON <= 0.1 * ctl.rel_tol {
            return Ok(walk(&BesselOde { order: n as f64 }, z0, s0.value, s0.deriv, z));
        }
        r0 *= 0.5;
    }
    Err(Error::Accuracy {
        function: "bessel",
        terms: ctl.max_terms,
        bound: f64::NAN,
    })
}

fn h1_upper(n: u32, z: C64, ctl: &SeriesControl) -> Result<(C64, C64)> {
    let r = z.norm();
    if r >= HANKEL_RADIUS {
        if let Some(v) = hankel1_asymptotic(n, z, ctl.rel_tol) {
            return Ok(v);
        }
    }
    if r <= SERIES_Y_RADIUS {
        let (j, dj) = j_upper(n, z, ctl)?;
        let y = y_series(n, z, ctl);
        let y1 = y_series(n + 1, z, ctl);
        let dy = y * (n as f64) / z - y1;
        let i = C64::i();
        return Ok((j + i * y, dj + i * dy));
    }
    let dir = z / r;
    let mut rs = r.max(HANKEL_RADIUS);
    for _ in 0..40 {
        let zs = dir * rs;
        if let Some((h, dh)) = hankel1_asymptotic(n, zs, 0.01 * ctl.rel_tol) {
            return Ok(walk(&BesselOde { order: n as f64 }, zs, h, dh, z));
        }
        rs *= 2.0;
    }
    Err(Error::Accuracy {
        function: "bessel",
        terms: ctl.max_terms,
        bound: f64::NAN,
    })
}

/// Value and z-derivative of the requested Bessel function.
pub fn bessel_with_derivative(kind: BesselKind, order: u32, z: C64, ctl: &SeriesControl) -> Result<(C64, C64)> {
    if z == ZERO {
        return match kind {
            BesselKind::J => {
                let v = if order == 0 { 1.0 } else { 0.0 };
                let d = if order == 1 { 0.5 } else { 0.0 };
                Ok((C64::new(v, 0.0), C64::new(d, 0.0)))
            }
            _ => Err(crate::error::domain("bessel", "Y and H1 are singular at z = 0")),
        };
    }
    // J and Y satisfy f(conj z) = conj f(z) off the negative real axis.
    let lower = z.im < 0.0;
    let zu = if lower { z.conj() } else { z };
    let conj = |(v, d): (C64, C64)| if lower { (v.conj(), d.conj()) } else { (v, d) };
    let i = C64::i();
    match kind {
        BesselKind::J => Ok(conj(j_upper(order, zu, ctl)?)),
        BesselKind::Y => {
            if zu.norm() <= SERIES_Y_RADIUS {
                let y = y_series(order, zu, ctl);
                let y1 = y_series(order + 1, zu, ctl);
                return Ok(conj((y, y * (order as f64) / zu - y1)));
            }
            let (j, dj) = j_upper(order, zu, ctl)?;
            let (h, dh) = h1_upper(order, zu, ctl)?;
            Ok(conj(((h - j) / i, (dh - dj) / i)))
        }
        BesselKind::H1 => {
            if !lower {
                return h1_upper(order, z, ctl);
            }
            let (j, dj) = bessel_with_derivative(BesselKind::J, order, z, ctl)?;
            let (y, dy) = bessel_with_derivative(BesselKind::Y, order, z, ctl)?;
            Ok((j + i * y, dj + i * dy))
        }
    }
}

/// J_n(z), Y_n(z) or H_n⁽¹⁾(z) for integer n ≥ 0.
pub fn bessel(kind: BesselKind, order: u32, z: C64, ctl: &SeriesControl) -> Result<C64> {
    bessel_with_derivative(kind, order, z, ctl).map(|(v, _)| v)
}
