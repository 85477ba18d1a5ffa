//! The finite-difference / shooting oracle: reference spectra, convergence
//! order, comparison reports and agreement with the closed forms.

mod common;

use common::zeta_sweep;
use dualspec::oracle::*;
use dualspec::{eigenfunction, spectrum, Error, ProblemSpec, Selector};
use std::f64::consts::FRAC_PI_2;

fn assert_levels(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (n, (g, w)) in got.iter().zip(want).enumerate() {
        assert!((g - w).abs() <= tol, "level {n}: oracle {g}, expected {w}");
    }
}

#[test]
fn oscillator_levels_on_linear_grid() {
    let spec = ProblemSpec::oscillator(1, 1.0);
    let grid = GridSpec::linear(1e-3, 15.0, 4000);
    // Second-order scheme: the raw levels carry an O(h²) shift, the
    // extrapolated ones meet the tight tolerance.
    let raw = fd_eigenvalues(&spec, &grid, 3).unwrap();
    assert_levels(&raw, &[4.0, 8.0, 12.0], 1e-3 * 12.0);
    let ext = fd_eigenvalues_extrapolated(&spec, &grid, 3).unwrap();
    assert_levels(&ext, &[4.0, 8.0, 12.0], 1e-4);
}

#[test]
fn coulomb_levels_on_wide_grid() {
    let spec = ProblemSpec::coulomb(2, -1.0);
    let grid = GridSpec::linear(1e-3, 200.0, 8000);
    let e = fd_eigenvalues(&spec, &grid, 2).unwrap();
    assert_levels(&e, &[-1.0 / 9.0, -1.0 / 25.0], 1e-4);
}

#[test]
fn oscillator_half_pi_family_levels() {
    let spec = ProblemSpec::oscillator(0, 1.0).with_zeta(FRAC_PI_2);
    let grid = recommended_grid(&spec, &[2.0, 10.0]);
    let e = fd_eigenvalues(&spec, &grid, 3).unwrap();
    assert_levels(&e, &[2.0, 6.0, 10.0], 1e-3 * 10.0);
}

#[test]
fn shooting_examples() {
    let e = shoot_eigenvalue(&ProblemSpec::oscillator(1, 1.0), (3.5, 4.5)).unwrap();
    assert!((e - 4.0).abs() < 1e-5, "{e}");

    let spec = ProblemSpec::coulomb(0, -1.0).with_zeta(FRAC_PI_2);
    let e = shoot_eigenvalue(&spec, (-1.1, -0.9)).unwrap();
    assert!((e + 1.0).abs() < 1e-5, "{e}");

    let spec = ProblemSpec::oscillator(0, 1.0).with_zeta(0.7);
    let exact = spectrum(&spec, 1).unwrap().discrete[0].energy;
    let bracket = (exact - 0.1 * exact.abs(), exact + 0.1 * exact.abs());
    let e = shoot_eigenvalue(&spec, bracket).unwrap();
    assert!((e - exact).abs() < 1e-4, "{e} vs {exact}");
}

#[test]
fn shooting_without_a_level_is_a_bracket_error() {
    let spec = ProblemSpec::coulomb(2, -1.0);
    // Between −1/9 and −1/25 there is no level.
    assert!(matches!(shoot_eigenvalue(&spec, (-0.1, -0.05)), Err(Error::Bracket { .. })));
}

#[test]
fn invalid_grids_are_rejected() {
    let spec = ProblemSpec::oscillator(1, 1.0);
    assert!(fd_eigenvalues(&spec, &GridSpec::linear(0.0, 15.0, 4000), 3).is_err());
    assert!(fd_eigenvalues(&spec, &GridSpec::log(1e-3, 15.0, 10), 3).is_err());
    assert!(fd_eigenvalues(&spec, &GridSpec::linear(1e-3, 15.0, 200), 500).is_err());
}

#[test]
fn second_order_convergence() {
    // Halving the spacing cuts the ground-state error by about four.
    let spec = ProblemSpec::oscillator(1, 1.0);
    let coarse = GridSpec::linear(1e-3, 15.0, 1000);
    let err = |g: &GridSpec| (fd_eigenvalues(&spec, g, 1).unwrap()[0] - 4.0).abs();
    let (e1, e2) = (err(&coarse), err(&coarse.refined()));
    let ratio = e1 / e2;
    assert!((3.6..=4.4).contains(&ratio), "error ratio {ratio} ({e1:e} → {e2:e})");
}

#[test]
fn report_flags_coarse_grids() {
    let spec = ProblemSpec::oscillator(1, 1.0);
    let coarse = fd_report(&spec, &GridSpec::linear(1e-3, 15.0, 200), 3, 1e-8).unwrap();
    assert!(coarse.warning.is_some());
    let fine = fd_report(&spec, &GridSpec::linear(1e-3, 15.0, 4000), 3, 1e-3).unwrap();
    assert!(fine.warning.is_none(), "{:?}", fine.warning);
    assert_levels(&fine.extrapolated, &[4.0, 8.0, 12.0], 1e-4);
}

#[test]
fn comparison_passes_and_names_failures() {
    let spec = ProblemSpec::oscillator(2, 0.5);
    let measure = spectrum(&spec, 3).unwrap();
    let grid = recommended_grid(&spec, &measure.energies());
    let oracle = fd_eigenvalues(&spec, &grid, 3).unwrap();
    let report = compare_spectra(&measure, &oracle, 1e-3);
    assert!(report.pass, "{report:?}");
    assert!(report.failures().is_empty());

    let mut perturbed = oracle.clone();
    perturbed[1] *= 1.01;
    let report = compare_spectra(&measure, &perturbed, 1e-3);
    assert!(!report.pass);
    assert_eq!(report.failures(), vec![1]);
    assert_eq!(report.rows[1].n, 1);
}

#[test]
fn comparison_flags_count_mismatch() {
    let report = compare_levels(&[4.0, 8.0, 12.0], &[4.0, 8.0], 1e-6);
    assert!(!report.pass);
    assert_eq!((report.closed_count, report.oracle_count), (3, 2));
}

/// Lowest three family levels from the oracle at each sweep angle.
fn oracle_sweep(base: ProblemSpec) -> Vec<(f64, Vec<f64>, Vec<f64>)> {
    zeta_sweep()
        .into_iter()
        .map(|z| {
            let spec = base.with_zeta(z);
            let exact = spectrum(&spec, 3).unwrap().energies();
            let grid = recommended_grid(&spec, &exact);
            let oracle = fd_eigenvalues(&spec, &grid, exact.len()).unwrap();
            (z, exact, oracle)
        })
        .collect()
}

fn check_sweep(base: ProblemSpec, decreasing: bool) {
    let sweep = oracle_sweep(base);
    for (z, exact, oracle) in &sweep {
        let report = compare_levels(exact, oracle, 1e-3);
        assert!(report.pass, "zeta {z}: {report:?}");
    }
    for pair in sweep.windows(2) {
        let (a, b) = (&pair[0].2, &pair[1].2);
        for n in 0..a.len().min(b.len()) {
            let slope_ok = if decreasing { b[n] < a[n] } else { b[n] > a[n] };
            assert!(slope_ok, "level {n} between zeta {} and {}: {} → {}", pair[0].0, pair[1].0, a[n], b[n]);
        }
    }
}

#[test]
fn oscillator_family_sweep() {
    check_sweep(ProblemSpec::oscillator(0, 1.0), true);
}

#[test]
fn coulomb_family_sweeps() {
    check_sweep(ProblemSpec::coulomb(0, -1.0), true);
    check_sweep(ProblemSpec::coulomb(1, -1.0), false);
}

/// L² distance between the oracle eigenfunction and the closed form,
/// trapezoid rule on the (possibly non-uniform) nodes.
fn l2_distance(spec: &ProblemSpec, f: &FdEigenfunction, n: usize) -> f64 {
    let wave = eigenfunction(spec, Selector::Level(n)).unwrap();
    let exact: Vec<f64> = f.r.iter().map(|&r| wave.eval_real(r).unwrap()).collect();
    let overlap: f64 = trapezoid(&f.r, |i| f.psi[i] * exact[i]);
    let sign = overlap.signum();
    trapezoid(&f.r, |i| (f.psi[i] - sign * exact[i]).powi(2)).sqrt()
}

fn trapezoid(r: &[f64], f: impl Fn(usize) -> f64) -> f64 {
    (1..r.len()).map(|i| 0.5 * (r[i] - r[i - 1]) * (f(i) + f(i - 1))).sum()
}

#[test]
fn eigenfunctions_match_closed_forms() {
    for spec in [
        ProblemSpec::oscillator(1, 1.0),
        ProblemSpec::oscillator(2, 0.5),
        ProblemSpec::oscillator(0, 1.0).with_zeta(0.3),
        ProblemSpec::coulomb(2, -1.0),
    ] {
        let exact = spectrum(&spec, 3).unwrap().energies();
        let grid = recommended_grid(&spec, &exact);
        for (n, f) in fd_eigenfunctions(&spec, &grid, 3).unwrap().iter().enumerate() {
            let d = l2_distance(&spec, f, n);
            assert!(d <= 1e-3, "{spec:?} level {n}: L2 distance {d:e}");
        }
    }
}

#[test]
fn oracle_eigenfunctions_are_normalized() {
    let spec = ProblemSpec::coulomb(3, -2.0);
    let exact = spectrum(&spec, 2).unwrap().energies();
    let grid = recommended_grid(&spec, &exact);
    for f in fd_eigenfunctions(&spec, &grid, 2).unwrap() {
        let norm = trapezoid(&f.r, |i| f.psi[i] * f.psi[i]);
        assert!((norm - 1.0).abs() < 1e-3, "{norm}");
    }
}
