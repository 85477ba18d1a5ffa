//! Bracketed root refinement (bisection safeguarded Newton/secant).

use crate::error::{Error, Result};

/// Finds a root of `f` in [lo, hi] given a sign change; `f` returns (value, derivative).
pub(crate) fn bracketed<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, Option<f64>)>,
{
    let (mut flo, _) = f(lo)?;
    let (fhi, _) = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() && !fhi.is_finite() {
        return Err(Error::Bracket { lo, hi });
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (fx, dfx) = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= xtol * x.abs().max(1.0) {
            return Ok(0.5 * (lo + hi));
        }
        let newton = dfx.filter(|d| *d != 0.0 && d.is_finite()).map(|d| x - fx / d);
        x = match newton {
            Some(n) if n > lo && n < hi => n,
            _ => 0.5 * (lo + hi),
        };
    }
    Ok(x)
}

/// Root of an increasing function `h` on (a, b), where `h → −∞` at `a` and
/// `h → +∞` at `b`; either end may be a pole or ±∞. `scale` sets the size
/// of the initial pole margin and of the outward search steps.
pub(crate) fn increasing_root<F>(h: F, a: f64, b: f64, scale: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, Option<f64>)>,
{
    let value = |x: f64| h(x).map(|(v, _)| v);
    let lo = if a.is_finite() {
        inner_end(&value, a, scale, 1.0, |v| v < 0.0)?
    } else {
        outer_end(&value, b, scale, -1.0, |v| v < 0.0)?
    };
    let hi = if b.is_finite() {
        inner_end(&value, b, scale, -1.0, |v| v > 0.0)?
    } else {
        outer_end(&value, a, scale, 1.0, |v| v > 0.0)?
    };
    match (lo, hi) {
        (End::Bracket(lo), End::Bracket(hi)) => bracketed(&h, lo, hi, 1e-15),
        (End::AtPole(p), _) | (_, End::AtPole(p)) => Ok(p),
    }
}

enum End {
    Bracket(f64),
    /// The root sits closer to the pole than floating point resolves.
    AtPole(f64),
}

fn inner_end<V: Fn(f64) -> Result<f64>>(value: &V, pole: f64, scale: f64, dir: f64, ok: impl Fn(f64) -> bool) -> Result<End> {
    let mut delta = 1e-6 * scale;
    let floor = 4.0 * f64::EPSILON * pole.abs().max(scale);
    while delta >= floor {
        let x = pole + dir * delta;
        if ok(value(x)?) {
            return Ok(End::Bracket(x));
        }
        delta *= 1e-3;
    }
    Ok(End::AtPole(pole))
}

fn outer_end<V: Fn(f64) -> Result<f64>>(value: &V, from: f64, scale: f64, dir: f64, ok: impl Fn(f64) -> bool) -> Result<End> {
    let start = if from.is_finite() { from } else { 0.0 };
    let mut step = scale;
    for _ in 0..200 {
        let x = start + dir * step;
        if ok(value(x)?) {
            return Ok(End::Bracket(x));
        }
        step *= 2.0;
    }
    Err(Error::Bracket {
        lo: start,
        hi: start + dir * step,
    })
}
