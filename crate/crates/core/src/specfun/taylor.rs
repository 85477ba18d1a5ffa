//! Analytic continuation of ODE solutions by local Taylor expansion.
//!
//! Both the Kummer and the Bessel equations have polynomial coefficients and
//! a single finite singular point at the origin, so the Taylor series about
//! any centre `c` converges in the disc |h| < |c|. Steps are limited to a
//! fraction of that radius, which keeps the local series geometrically
//! convergent.

use num_complex::Complex64 as C64;

/// Fraction of the distance to the origin taken per step.
const STEP_FRACTION: f64 = 0.4;
const MAX_TERMS: usize = 400;

/// Coefficient recurrence: given the centre and the coefficients
/// `c_0..=c_{k+1}`, returns `c_{k+2}`.
pub(crate) trait Recurrence {
    fn next(&self, centre: C64, k: usize, c: &[C64]) -> C64;

    /// Largest step at `centre`; bounded by the local oscillation/growth
    /// scale so that the Taylor sums stay free of cancellation.
    fn max_step(&self, centre: C64) -> f64 {
        (STEP_FRACTION * centre.norm()).min(LOCAL_SCALE)
    }
}

/// Bound on |h| times the local frequency of the solutions.
const LOCAL_SCALE: f64 = 1.5;

/// Kummer's equation z w'' + (b − z) w' − a w = 0.
pub(crate) struct KummerOde {
    pub a: C64,
    pub b: C64,
}

impl Recurrence for KummerOde {
    fn next(&self, centre: C64, k: usize, c: &[C64]) -> C64 {
        let kf = k as f64;
        ((self.a + kf) * c[k] - (self.b - centre + kf) * (kf + 1.0) * c[k + 1])
            / (centre * ((kf + 2.0) * (kf + 1.0)))
    }

    fn max_step(&self, centre: C64) -> f64 {
        // Local frequency ~ max(1, √|a/z|) for large parameters.
        let r = centre.norm();
        let freq = (self.a.norm() / r).sqrt().max((self.b.norm() / r).max(1.0));
        (STEP_FRACTION * r).min(LOCAL_SCALE / freq)
    }
}

/// Bessel's equation z² w'' + z w' + (z² − n²) w = 0.
pub(crate) struct BesselOde {
    pub order: f64,
}

impl Recurrence for BesselOde {
    fn next(&self, centre: C64, k: usize, c: &[C64]) -> C64 {
        let kf = k as f64;
        let prev1 = if k >= 1 { c[k - 1] } else { C64::new(0.0, 0.0) };
        let prev2 = if k >= 2 { c[k - 2] } else { C64::new(0.0, 0.0) };
        let num = centre * ((kf + 1.0) * (2.0 * kf + 1.0)) * c[k + 1]
            + (centre * centre + kf * kf - self.order * self.order) * c[k]
            + centre * 2.0 * prev1
            + prev2;
        -num / (centre * centre * ((kf + 2.0) * (kf + 1.0)))
    }

    fn max_step(&self, centre: C64) -> f64 {
        let r = centre.norm();
        let freq = (self.order / r).max(1.0);
        (STEP_FRACTION * r).min(LOCAL_SCALE / freq)
    }
}

fn step<R: Recurrence>(ode: &R, centre: C64, w: C64, dw: C64, h: C64) -> (C64, C64) {
    let mut c = Vec::with_capacity(64);
    c.push(w);
    c.push(dw);
    let mut val = w + dw * h;
    let mut der = dw;
    let mut hp = h; // h^(k+1)
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let next = ode.next(centre, k, &c);
        c.push(next);
        let n = (k + 2) as f64;
        let dterm = next * hp * n;
        hp *= h;
        let term = next * hp;
        val += term;
        der += dterm;
        let scale = val.norm().max(der.norm() * h.norm()).max(f64::MIN_POSITIVE);
        if term.norm() <= 1e-17 * scale && dterm.norm() * h.norm() <= 1e-17 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (val, der)
}

/// Continues `(w, w')` from `from` to `to` along the straight segment.
/// The segment must not pass through the origin.
pub(crate) fn walk<R: Recurrence>(ode: &R, from: C64, w: C64, dw: C64, to: C64) -> (C64, C64) {
    let mut z = from;
    let (mut w, mut dw) = (w, dw);
    loop {
        let remaining = to - z;
        let dist = remaining.norm();
        if dist == 0.0 {
            break;
        }
        let max_step = ode.max_step(z);
        let h = if dist <= max_step {
            remaining
        } else {
            remaining * (max_step / dist)
        };
        let (nw, ndw) = step(ode, z, w, dw, h);
        w = nw;
        dw = ndw;
        z = if dist <= max_step { to } else { z + h };
    }
    (w, dw)
}

/// Joint continuation of a Kummer solution `w` and its parameter derivative
/// `d = ∂_δ w` along (a, b) → (a + δ·da, b + δ·db), which satisfies
/// z d'' + (b − z) d' − a d = da·w − db·w'.
pub(crate) struct KummerPair {
    pub a: C64,
    pub b: C64,
    pub da: f64,
    pub db: f64,
}

impl KummerPair {
    fn step(&self, centre: C64, state: [C64; 4], h: C64) -> [C64; 4] {
        let ode = KummerOde { a: self.a, b: self.b };
        let mut w = Vec::with_capacity(64);
        let mut d = Vec::with_capacity(64);
        w.extend_from_slice(&state[..2]);
        d.extend_from_slice(&state[2..]);
        let mut out = [state[0] + state[1] * h, state[1], state[2] + state[3] * h, state[3]];
        let mut hp = h;
        let mut quiet = 0;
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            let wn = ode.next(centre, k, &w);
            w.push(wn);
            let src = w[k] * self.da - w[k + 1] * ((kf + 1.0) * self.db);
            let dn = ode.next(centre, k, &d) + src / (centre * ((kf + 2.0) * (kf + 1.0)));
            d.push(dn);
            let n = kf + 2.0;
            let terms = [wn * hp * h, wn * hp * n, dn * hp * h, dn * hp * n];
            hp *= h;
            for (o, t) in out.iter_mut().zip(terms) {
                *o += t;
            }
            let scale_w = out[0].norm().max(out[1].norm() * h.norm()).max(f64::MIN_POSITIVE);
            let scale_d = out[2].norm().max(out[3].norm() * h.norm()).max(f64::MIN_POSITIVE);
            let hn = h.norm();
            if terms[0].norm().max(terms[1].norm() * hn) <= 1e-17 * scale_w
                && terms[2].norm().max(terms[3].norm() * hn) <= 1e-17 * scale_d
            {
                quiet += 1;
                if quiet >= 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        out
    }

    /// Continues `[w, w', d, d']` from `from` to `to`.
    pub(crate) fn walk(&self, from: C64, state: [C64; 4], to: C64) -> [C64; 4] {
        let ode = KummerOde { a: self.a, b: self.b };
        let mut z = from;
        let mut state = state;
        loop {
            let remaining = to - z;
            let dist = remaining.norm();
            if dist == 0.0 {
                return state;
            }
            let max_step = ode.max_step(z);
            let (h, last) = if dist <= max_step {
                (remaining, true)
            } else {
                (remaining * (max_step / dist), false)
            };
            state = self.step(z, state, h);
            z = if last { to } else { z + h };
        }
    }
}
