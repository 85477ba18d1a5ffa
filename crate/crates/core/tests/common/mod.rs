//! Numerical helpers shared by the integration tests: independent
//! oracles (quadrature, finite differences, ε-extrapolation) that do not
//! reuse the closed forms under test.

#![allow(dead_code)]

use dualspec::quad::integrate;
use dualspec::Complex64 as C;

/// ε values used for the boundary-value extrapolation ε → +0.
pub const EPSILONS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Richardson extrapolation to ε = 0 of samples f(ε) at ε, ε/10, ε/100
/// assuming f(ε) = f(0) + aε + bε² + O(ε³).
pub fn richardson(f: [f64; 3]) -> f64 {
    // Eliminate the linear term pairwise, then the quadratic term.
    let r1 = (10.0 * f[1] - f[0]) / 9.0;
    let r2 = (10.0 * f[2] - f[1]) / 9.0;
    (100.0 * r2 - r1) / 99.0
}

/// σ′(E) from (1/π) Im Ω(E + iε), extrapolated ε → +0.
pub fn density_from_boundary_values(big_omega: impl Fn(C) -> C, e: f64) -> f64 {
    let samples = EPSILONS.map(|eps| big_omega(C::new(e, eps)).im / std::f64::consts::PI);
    richardson(samples)
}

/// ∫_a^b of a complex integrand.
pub fn integrate_complex(f: impl Fn(f64) -> C, a: f64, b: f64, tol: f64) -> C {
    let re = integrate(|x| f(x).re, a, b, tol, tol).expect("real part converges");
    let im = integrate(|x| f(x).im, a, b, tol, tol).expect("imaginary part converges");
    C::new(re, im)
}

/// Largest |(−∂² + V − W)ψ − η| at the probe points, where
/// ψ(r) = ∫ G(r, s) η(s) ds with a Gaussian bump η centred at `centre`.
pub fn resolvent_residual(
    green: impl Fn(f64, f64) -> C,
    potential: impl Fn(f64) -> f64,
    w: C,
    centre: f64,
    probes: &[f64],
) -> f64 {
    let width = 0.05;
    let eta = |s: f64| (-(s - centre).powi(2) / width).exp();
    let (a, b) = (centre - 1.4, centre + 1.4);
    let psi = |r: f64| {
        integrate_complex(|s| green(r, s) * eta(s), a, r, 1e-14)
            + integrate_complex(|s| green(r, s) * eta(s), r, b, 1e-14)
    };
    let h = 1e-3;
    probes
        .iter()
        .map(|&r| {
            let (m, p0, p) = (psi(r - h), psi(r), psi(r + h));
            let d2 = (p - 2.0 * p0 + m) / (h * h);
            (-d2 + (potential(r) - w) * p0 - eta(r)).norm()
        })
        .fold(0.0, f64::max)
}

/// The level E_n(ζ) as ζ approaches an end of (−π/2, π/2), estimated by
/// linear extrapolation in the distance δ to the endpoint (levels are
/// smooth in cot ζ there). `toward_upper` picks ζ → +π/2.
pub fn endpoint_limit(level: impl Fn(f64) -> f64, toward_upper: bool) -> f64 {
    let half = std::f64::consts::FRAC_PI_2;
    let at = |d: f64| level(if toward_upper { half - d } else { -half + d });
    let (d1, d2) = (1e-5, 2e-5);
    2.0 * at(d1) - at(d2)
}

/// Nine interior angles spread evenly over (−π/2, π/2).
pub fn zeta_sweep() -> Vec<f64> {
    (0..9)
        .map(|i| -std::f64::consts::FRAC_PI_2 + (i as f64 + 0.5) * std::f64::consts::PI / 9.0)
        .collect()
}
