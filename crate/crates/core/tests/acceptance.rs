//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//!  1. oscillator discrete levels (closed form + oracle, timed)
//!  2. Coulomb discrete levels (closed form + oracle, half-π family ladders)
//!  3. extension families (interlacing, monotonicity, endpoints, critical angles)
//!  4. spectral densities (closed forms, positivity, Green-function boundary values)
//!  5. duality (solution/coefficient identities, spectrum correspondence, timed)
//!  6. structural properties (Wronskians, orthonormality, real-entireness, λ → ±0)
//!  7. special functions (recurrences, Kummer transformation, Bessel Wronskian,
//!     integer-b Tricomi against its regularized limit)
//!
//! Tolerances and budgets are the constants below. Runs without the libtest
//! harness so that the report is always printed; exits non-zero on failure.

mod common;

use common::{density_from_boundary_values, endpoint_limit, zeta_sweep};
use dualspec::coulomb::*;
use dualspec::duality::*;
use dualspec::oracle::{fd_eigenvalues, recommended_grid};
use dualspec::oscillator::*;
use dualspec::quad::integrate;
use dualspec::specfun::*;
use dualspec::{density, eigenfunction, spectrum, Complex64 as C, ProblemSpec, Selector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

const LEVEL_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-3;
const ORACLE_POINTS: usize = 4000;
const OSC_BUDGET: Duration = Duration::from_secs(10);
const ENDPOINT_TOL: f64 = 1e-6;
const GREEN_TOL: f64 = 1e-6;
const IDENTITY_TOL: f64 = 1e-8;
const CORRESPONDENCE_TOL: f64 = 1e-12;
const DUALITY_BUDGET: Duration = Duration::from_secs(5);
const MIN_RANDOM_SAMPLES: usize = 100;
const WRONSKIAN_TOL: f64 = 1e-8;
const ORTHONORMALITY_TOL: f64 = 1e-6;
const SMALL_COUPLING: f64 = 1e-6;
const SMALL_COUPLING_TOL: f64 = 1e-4;
const SPECFUN_TOL: f64 = 1e-10;
const REGULARIZATION_DELTA: f64 = 1e-6;
const REGULARIZED_TOL: f64 = 1e-6;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Collects failed checks of one criterion.
#[derive(Default)]
struct Report {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// |got − want| ≤ tol·max(|want|, floor).
    fn close(&mut self, got: f64, want: f64, tol: f64, floor: f64, what: impl FnOnce() -> String) {
        let ok = (got - want).abs() <= tol * want.abs().max(floor);
        self.ensure(ok, || format!("{}: got {got:e}, want {want:e}", what()));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn run(number: usize, title: &str, body: fn(&mut Report)) -> bool {
    let start = Instant::now();
    let mut report = Report::default();
    let outcome = catch_unwind(AssertUnwindSafe(|| body(&mut report)));
    if let Err(panic) = outcome {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        report.failures.push(format!("aborted: {msg}"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = report.failures.is_empty();
    println!(
        "criterion {number}: {} - {title} ({} checks, {elapsed:.2}s){}",
        if pass { "PASS" } else { "FAIL" },
        report.checks,
        if report.notes.is_empty() { String::new() } else { format!("; {}", report.notes.join("; ")) }
    );
    for f in report.failures.iter().take(10) {
        println!("    {f}");
    }
    if report.failures.len() > 10 {
        println!("    ... {} more", report.failures.len() - 10);
    }
    pass
}

fn main() -> ExitCode {
    println!("acceptance suite");
    let results = [
        run(1, "oscillator discrete levels", criterion_1),
        run(2, "Coulomb discrete levels", criterion_2),
        run(3, "extension families", criterion_3),
        run(4, "spectral densities", criterion_4),
        run(5, "duality", criterion_5),
        run(6, "structural properties", criterion_6),
        run(7, "special functions", criterion_7),
    ];
    let passed = results.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Lowest `count` oracle levels on the recommended grid, compared
/// relative to |E|.
fn oracle_check(r: &mut Report, spec: &ProblemSpec, closed: &[f64], count: usize, expected_points: Option<usize>) {
    let grid = recommended_grid(spec, &closed[..count]);
    if let Some(p) = expected_points {
        r.ensure(grid.points == p, || format!("{spec:?}: grid has {} points", grid.points));
    }
    match fd_eigenvalues(spec, &grid, count) {
        Ok(fd) => {
            for n in 0..count {
                r.close(fd[n], closed[n], ORACLE_TOL, 0.0, || format!("oracle {spec:?} n={n}"));
            }
        }
        Err(e) => r.ensure(false, || format!("oracle {spec:?}: {e}")),
    }
}

// --------------------------------------------------------------------- 1

fn criterion_1(r: &mut Report) {
    let start = Instant::now();
    for lambda in [0.5, 1.0, 4.0] {
        for m in [1, -1, 2, -2, 5, -5] {
            let spec = ProblemSpec::oscillator(m, lambda);
            let levels = spectrum(&spec, 11).unwrap().energies();
            r.ensure(levels.len() == 11, || format!("{spec:?}: {} levels", levels.len()));
            for (n, e) in levels.iter().enumerate() {
                let want = 2.0 * lambda.sqrt() * (2.0 * n as f64 + m.abs() as f64 + 1.0);
                r.close(*e, want, LEVEL_TOL, 0.0, || format!("{spec:?} n={n}"));
            }
            oracle_check(r, &spec, &levels, 3, Some(ORACLE_POINTS));
        }
    }
    let elapsed = start.elapsed();
    r.ensure(elapsed < OSC_BUDGET, || format!("runtime {elapsed:?} exceeds {OSC_BUDGET:?}"));
    r.note(format!("runtime {:.2}s < {}s", elapsed.as_secs_f64(), OSC_BUDGET.as_secs()));
}

// --------------------------------------------------------------------- 2

fn criterion_2(r: &mut Report) {
    for g in [-0.5, -1.0, -3.0] {
        for m in [2, -2, 3, -3] {
            let spec = ProblemSpec::coulomb(m, g);
            let levels = spectrum(&spec, 11).unwrap().energies();
            r.ensure(levels.len() == 11, || format!("{spec:?}: {} levels", levels.len()));
            for (n, e) in levels.iter().enumerate() {
                let want = -g * g / (m.abs() as f64 + 1.0 + 2.0 * n as f64).powi(2);
                r.close(*e, want, LEVEL_TOL, 0.0, || format!("{spec:?} n={n}"));
            }
            oracle_check(r, &spec, &levels, 3, None);
        }
        for m in [0, 1, -1] {
            let spec = ProblemSpec::coulomb(m, g).with_zeta(FRAC_PI_2);
            let levels = spectrum(&spec, 11).unwrap().energies();
            for (n, e) in levels.iter().enumerate() {
                let nf = n as f64;
                let want = if m == 0 { -g * g / (1.0 + 2.0 * nf).powi(2) } else { -g * g / (4.0 * (1.0 + nf).powi(2)) };
                r.close(*e, want, LEVEL_TOL, 0.0, || format!("{spec:?} n={n}"));
            }
            if m >= 0 {
                oracle_check(r, &spec, &levels, 3, None);
            }
        }
    }
}

// --------------------------------------------------------------------- 3

/// A family cell: theory, m, coupling.
#[derive(Clone, Copy, Debug)]
enum Family {
    Osc { lambda: f64 },
    Coul { m: i32, g: f64 },
}

impl Family {
    fn spec(self, zeta: f64) -> ProblemSpec {
        match self {
            Family::Osc { lambda } => ProblemSpec::oscillator(0, lambda).with_zeta(zeta),
            Family::Coul { m, g } => ProblemSpec::coulomb(m, g).with_zeta(zeta),
        }
    }

    /// The quantity whose zeros on the real axis are the levels at ζ.
    fn root_function(self, zeta: f64, e: f64) -> f64 {
        let t = zeta.tan();
        match self {
            Family::Osc { lambda } => osc_family_function(c(e, 0.0), lambda, 1.0).unwrap().re + t,
            Family::Coul { m: 0, g } => coul_family_function(0, c(e, 0.0), g, 1.0).unwrap().re + t,
            Family::Coul { m, g } => coul_family_function(m, c(e, 0.0), g, 1.0).unwrap().re - t,
        }
    }

    /// Level n of the ζ = π/2 ladder (the interval ends of the family).
    fn ladder(self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            Family::Osc { lambda } => 2.0 * lambda.sqrt() * (1.0 + 2.0 * nf),
            Family::Coul { m: 0, g } => -g * g / (1.0 + 2.0 * nf).powi(2),
            Family::Coul { g, .. } => -g * g / (4.0 * (1.0 + nf).powi(2)),
        }
    }

    fn decreasing(self) -> bool {
        !matches!(self, Family::Coul { m: 1, .. })
    }

    fn has_ladder(self) -> bool {
        match self {
            Family::Osc { .. } => true,
            Family::Coul { g, .. } => g < 0.0,
        }
    }

    fn levels(self, zeta: f64, count: usize) -> Vec<f64> {
        spectrum(&self.spec(zeta), count).unwrap().energies()
    }
}

fn sign_changes(values: impl Iterator<Item = f64>) -> usize {
    let v: Vec<f64> = values.collect();
    v.windows(2).filter(|p| p[0].signum() != p[1].signum()).count()
}

/// Root of the (increasing) root function in (lo, hi) by bisection.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn criterion_3(r: &mut Report) {
    let mut families = vec![Family::Osc { lambda: 1.0 }];
    for m in [0, 1] {
        for g in [-1.0, 0.0, 1.0] {
            families.push(Family::Coul { m, g });
        }
    }
    let sweep = zeta_sweep();
    for fam in families {
        let table: Vec<Vec<f64>> = sweep.iter().map(|&z| fam.levels(z, 3)).collect();
        for (zi, &zeta) in sweep.iter().enumerate() {
            let levels = &table[zi];
            if fam.has_ladder() {
                r.ensure(levels.len() == 3, || format!("{fam:?} ζ={zeta}: {} levels", levels.len()));
                // One root in each interval between consecutive ladder points
                // (logarithmic scan over 21 decades below the lowest one, where
                // the ground state runs off to −∞ as ζ → π/2).
                for (n, e) in levels.iter().enumerate() {
                    let hi = fam.ladder(n);
                    let lo = if n == 0 { f64::NEG_INFINITY } else { fam.ladder(n - 1) };
                    r.ensure(lo < *e && *e < hi, || format!("{fam:?} ζ={zeta} n={n}: {e} outside ({lo}, {hi})"));
                    let count = if n == 0 {
                        let scale = hi.abs().max(1.0);
                        sign_changes((0..3000).rev().map(|i| fam.root_function(zeta, hi - scale * 10f64.powf(-9.0 + 21.0 * i as f64 / 2999.0))))
                    } else {
                        sign_changes((1..3000).map(|i| fam.root_function(zeta, lo + (hi - lo) * i as f64 / 3000.0)))
                    };
                    r.ensure(count == 1, || format!("{fam:?} ζ={zeta}: {count} roots in interval {n}"));
                }
            } else {
                // At most one negative level: the root count on (−∞, 0) matches.
                let negative: Vec<f64> = levels.iter().copied().filter(|e| *e < 0.0).collect();
                let count = sign_changes((0..3000).map(|i| fam.root_function(zeta, -(10f64.powf(12.0 - 24.0 * i as f64 / 2999.0)))));
                r.ensure(count == negative.len() && count <= 1, || {
                    format!("{fam:?} ζ={zeta}: {count} roots below 0, {} levels", negative.len())
                });
            }
        }
        // Monotonicity along ζ, level by level.
        for pair in table.windows(2).zip(sweep.windows(2)) {
            let ((a, b), z) = ((&pair.0[0], &pair.0[1]), pair.1);
            for n in 0..a.len().min(b.len()) {
                let ok = if fam.decreasing() { b[n] < a[n] } else { b[n] > a[n] };
                r.ensure(ok, || format!("{fam:?} n={n}: {} → {} between ζ={} and ζ={}", a[n], b[n], z[0], z[1]));
            }
        }
    }

    // Endpoint limits: the family levels approach the ζ = π/2 ladder.
    let osc = Family::Osc { lambda: 1.0 };
    for n in 0..3 {
        let target = osc.ladder(n);
        let lower = endpoint_limit(|z| osc.levels(z, n + 1)[n], false);
        r.close(lower, target, ENDPOINT_TOL, 1.0, || format!("oscillator ζ→−π/2 n={n}"));
        // Near ζ = +π/2 the ground state leaves the floating-point range;
        // the level is located inside its interval directly.
        let upper = endpoint_limit(|z| bisect(|e| osc.root_function(z, e), target, osc.ladder(n + 1)), true);
        r.close(upper, target, ENDPOINT_TOL, 1.0, || format!("oscillator ζ→+π/2 n={}", n + 1));
    }
    for n in 0..3 {
        let f0 = Family::Coul { m: 0, g: -1.0 };
        let down = endpoint_limit(|z| f0.levels(z, n + 1)[n], false);
        r.close(down, f0.ladder(n), ENDPOINT_TOL, 0.0, || format!("Coulomb m=0 ζ→−π/2 n={n}"));
        let f1 = Family::Coul { m: 1, g: -1.0 };
        let up = endpoint_limit(|z| f1.levels(z, n + 1)[n], true);
        r.close(up, f1.ladder(n), ENDPOINT_TOL, 0.0, || format!("Coulomb m=1 ζ→+π/2 n={n}"));
        let down = endpoint_limit(|z| f1.levels(z, n + 2)[n + 1], false);
        r.close(down, f1.ladder(n), ENDPOINT_TOL, 0.0, || format!("Coulomb m=1 ζ→−π/2 n={}", n + 1));
    }

    // Critical angles carry a zero-energy atom.
    for g in [0.5, 1.0, 2.0] {
        for m in [0, 1] {
            let zc = coul_critical_zeta(m, g, 1.0).unwrap();
            let s = spectrum(&ProblemSpec::coulomb(m, g).with_zeta(zc), 3).unwrap();
            r.ensure(s.discrete.len() == 1 && s.discrete[0].energy == 0.0 && s.discrete[0].weight > 0.0, || {
                format!("m={m} g={g} ζ_c={zc}: {:?}", s.discrete)
            });
        }
    }
}

// --------------------------------------------------------------------- 4

fn criterion_4(r: &mut Report) {
    // λ = 0 oscillator: σ′(p²) = [(p/2κ₀)^{|m|} / ((2κ₀)^{1/2} |m|!)]².
    for k0 in [1.0, 0.7] {
        for m in [1, 2, 3, -2] {
            let spec = ProblemSpec::oscillator(m, 0.0).with_kappa0(k0);
            for e in [0.3, 1.0, 4.0, 9.5] {
                let p = f64::sqrt(e);
                let fact: f64 = (1..=m.abs()).map(|k| k as f64).product();
                let rho = (p / (2.0 * k0)).powi(m.abs()) / ((2.0 * k0).sqrt() * fact);
                r.close(density(&spec, e).unwrap(), rho * rho, 1e-12, 0.0, || format!("free oscillator m={m} κ₀={k0} E={e}"));
            }
        }
    }
    // Coulomb m = 0, g = 0, ζ = π/2: σ′ ≡ 1/(2κ₀).
    for k0 in [1.0, 0.6, 2.0] {
        let spec = ProblemSpec::coulomb(0, 0.0).with_zeta(FRAC_PI_2).with_kappa0(k0);
        for e in [0.01, 0.5, 3.0, 40.0] {
            r.close(density(&spec, e).unwrap(), 0.5 / k0, 1e-13, 0.0, || format!("Coulomb m=0 g=0 κ₀={k0} E={e}"));
        }
    }
    // Positivity on the supports.
    let continuous = [
        ProblemSpec::oscillator(1, -1.0),
        ProblemSpec::oscillator(3, -0.4),
        ProblemSpec::oscillator(0, -1.0).with_zeta(0.4),
        ProblemSpec::oscillator(2, 0.0),
        ProblemSpec::oscillator(0, 0.0).with_zeta(-0.3),
        ProblemSpec::coulomb(2, -1.0),
        ProblemSpec::coulomb(3, 2.0),
        ProblemSpec::coulomb(1, -1.0).with_zeta(0.3),
        ProblemSpec::coulomb(1, 1.5).with_zeta(1.0),
        ProblemSpec::coulomb(0, 0.0).with_zeta(0.7),
        ProblemSpec::coulomb(0, 2.0).with_zeta(-1.2),
    ];
    for spec in &continuous {
        let measure = spectrum(spec, 1).unwrap();
        for i in 0..81 {
            let e = -10.0 + 0.25 * i as f64 + 0.01;
            if measure.support.contains(e) {
                let d = density(spec, e).unwrap();
                r.ensure(d > 0.0 && d.is_finite(), || format!("{spec:?} E={e}: σ′ = {d}"));
            }
        }
    }
    // Boundary values of the Green coefficient, ε ∈ {1e-2, 1e-3, 1e-4}
    // extrapolated, at ten energies per cell.
    let positive = [0.1, 0.25, 0.5, 0.8, 1.2, 2.0, 3.0, 4.5, 7.0, 10.0];
    let real_line = [-8.0, -4.0, -2.0, -0.5, 0.1, 0.7, 1.5, 3.0, 6.0, 10.0];
    let cells: [(ProblemSpec, &[f64]); 7] = [
        (ProblemSpec::oscillator(2, 0.0), &positive),
        (ProblemSpec::oscillator(1, -1.0), &real_line),
        (ProblemSpec::oscillator(0, -1.0).with_zeta(0.4), &real_line),
        (ProblemSpec::coulomb(2, -1.0), &positive),
        (ProblemSpec::coulomb(1, -1.0).with_zeta(0.3), &positive),
        (ProblemSpec::coulomb(0, 1.0).with_zeta(FRAC_PI_2), &positive),
        (ProblemSpec::coulomb(0, 0.0).with_zeta(-0.2), &positive),
    ];
    for (spec, energies) in cells {
        for &e in energies {
            let big_omega = |z: C| match spec.theory {
                dualspec::Theory::Oscillator => osc_big_omega(&spec, z).unwrap(),
                dualspec::Theory::Coulomb => coul_big_omega(&spec, z).unwrap(),
            };
            let from_green = density_from_boundary_values(big_omega, e);
            let closed = density(&spec, e).unwrap();
            r.close(from_green, closed, GREEN_TOL, 1e-3, || format!("{spec:?} E={e}: boundary value"));
        }
    }
}

// --------------------------------------------------------------------- 5

fn criterion_5(r: &mut Report) {
    let start = Instant::now();
    let samples = random_samples(160, 2024);
    let mut evaluated = usize::MAX;
    for m in -3..=3 {
        let channels: &[u8] = if m == 0 { &[1, 2, 3] } else { &[1, 3, 4] };
        for &k in channels {
            let chk = verify_solution_identity(k, m, &samples, 1.0).unwrap();
            evaluated = evaluated.min(chk.evaluated);
            r.ensure(chk.evaluated >= MIN_RANDOM_SAMPLES && chk.passes(IDENTITY_TOL), || format!("{chk:?}"));
        }
    }
    let coefficient_samples: Vec<(C, f64)> = samples.iter().filter(|p| p.e.im != 0.0).map(|p| (p.e, p.g)).collect();
    let extra: Vec<(C, f64)> = random_samples(160, 77).iter().filter(|p| p.e.im != 0.0).map(|p| (p.e, p.g)).collect();
    let coefficient_samples: Vec<(C, f64)> = coefficient_samples.into_iter().chain(extra).collect();
    for m in -4..=4 {
        let zeta = (m == 0).then_some(0.5);
        for chk in verify_coefficient_identities(m, &coefficient_samples, zeta, 1.0).unwrap() {
            evaluated = evaluated.min(chk.evaluated);
            r.ensure(chk.evaluated >= MIN_RANDOM_SAMPLES && chk.passes(IDENTITY_TOL), || format!("{chk:?}"));
        }
    }
    let mut worst: f64 = 0.0;
    for m in -5..=5 {
        for lambda in [0.5, 1.0, 4.0] {
            let corr = verify_spectrum_correspondence(m, lambda, 20, 1.0).unwrap();
            let scale = (lambda / 4.0).max(1.0);
            worst = worst.max(corr.max_deviation / scale);
            r.ensure(corr.pairs.len() == 21 && corr.max_deviation <= CORRESPONDENCE_TOL * scale, || {
                format!("spectrum correspondence m={m} λ={lambda}: {:e}", corr.max_deviation)
            });
        }
    }
    let dens: Vec<(f64, f64)> = random_samples(200, 5).iter().filter(|p| p.e.im == 0.0 && p.e.re > 0.0).map(|p| (p.e.re, p.g)).collect();
    for (m, zeta) in [(2, None), (-3, None), (0, Some(0.5))] {
        let chk = verify_density_correspondence(m, zeta, &dens, 1.0).unwrap();
        r.ensure(chk.passes(1e-6), || format!("{chk:?}"));
    }
    let elapsed = start.elapsed();
    r.ensure(elapsed < DUALITY_BUDGET, || format!("runtime {elapsed:?} exceeds {DUALITY_BUDGET:?}"));
    r.note(format!("≥{evaluated} samples per identity, level deviation ≤{worst:.1e}, runtime {:.2}s < {}s", elapsed.as_secs_f64(), DUALITY_BUDGET.as_secs()));
}

// --------------------------------------------------------------------- 6

/// Wr(f, g) = f g′ − f′ g with fourth-order central differences.
fn wronskian(f: impl Fn(f64) -> C, g: impl Fn(f64) -> C, u: f64) -> C {
    let h = 1e-3 * u.min(1.0);
    let d = |f: &dyn Fn(f64) -> C| (f(u - 2.0 * h) - f(u + 2.0 * h) + 8.0 * (f(u + h) - f(u - h))) / (12.0 * h);
    f(u) * d(&g) - d(&f) * g(u)
}

fn criterion_6(r: &mut Report) {
    let points = [0.1, 0.3, 0.7, 1.0, 1.8, 2.5, 3.6, 5.0];
    // Wr(O1, O3) is the constant −2κ₀|m|C; Wr(C1, C3) is constant.
    for (m, w, lambda) in [(1, c(1.0, 0.5), 1.0), (2, c(-0.7, 1.2), 0.5), (3, c(2.0, -0.4), 4.0), (1, c(1.5, 0.3), -1.0)] {
        let want = -2.0 * m as f64 * osc_coefficients(m, w, lambda, 1.0).unwrap().c;
        for u in points {
            let o = |k: OscKind| move |u: f64| osc_solution(k, m, u, w, lambda, 1.0).unwrap();
            let wr = wronskian(o(OscKind::O1), o(OscKind::O3), u);
            r.ensure((wr - want).norm() <= WRONSKIAN_TOL * want.norm(), || format!("Wr(O1,O3) m={m} W={w} u={u}: {wr} vs {want}"));
        }
    }
    for (m, e, g) in [(2, c(-0.3, 0.4), 1.0), (3, c(1.5, 0.2), -0.7), (1, c(-0.2, 0.3), 0.6)] {
        let s = |k: CoulKind| move |x: f64| coul_solution(k, m, x, e, g, 1.0).unwrap();
        let w0 = wronskian(s(CoulKind::C1), s(CoulKind::C3), points[0]);
        for x in points {
            let w = wronskian(s(CoulKind::C1), s(CoulKind::C3), x);
            r.ensure((w - w0).norm() <= WRONSKIAN_TOL * w0.norm(), || format!("Wr(C1,C3) m={m} x={x}: {w} vs {w0}"));
        }
    }

    // Orthonormality of the lowest five eigenfunctions in three cells of each theory.
    let cells = [
        (ProblemSpec::oscillator(1, 1.0), 14.0),
        (ProblemSpec::oscillator(2, 0.5), 14.0),
        (ProblemSpec::oscillator(0, 1.0).with_zeta(0.3), 14.0),
        (ProblemSpec::coulomb(2, -1.0), 0.0),
        (ProblemSpec::coulomb(1, -1.0).with_zeta(0.3), 0.0),
        (ProblemSpec::coulomb(0, -1.0).with_zeta(-0.4), 0.0),
    ];
    for (spec, upper) in cells {
        let upper = if upper > 0.0 {
            upper
        } else {
            let e4 = spectrum(&spec, 5).unwrap().discrete[4].energy;
            72.0 / (-e4).sqrt()
        };
        let waves: Vec<_> = (0..5).map(|n| eigenfunction(&spec, Selector::Level(n)).unwrap()).collect();
        for i in 0..5 {
            for j in i..5 {
                let v = integrate(|x| waves[i].eval_real(x).unwrap() * waves[j].eval_real(x).unwrap(), 1e-14, upper, 1e-12, 1e-10).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                r.ensure((v - want).abs() <= ORTHONORMALITY_TOL, || format!("{spec:?} ⟨{i}|{j}⟩ = {v}"));
            }
        }
    }

    // Real-entireness: real on the real energy axis, conjugation symmetric off it.
    for m in [1, 2, 4] {
        for (w, lambda) in [(2.3, 1.0), (-1.7, 0.5), (3.1, -2.0)] {
            for u in [0.2, 1.1, 2.7] {
                for kind in [OscKind::O1, OscKind::O4] {
                    let at = |w: C| osc_solution(kind, m, u, w, lambda, 1.0).unwrap();
                    let v = at(c(w, 0.0));
                    r.ensure(v.im.abs() <= 1e-12 * v.norm(), || format!("{kind:?} m={m} W={w}: {v}"));
                    let (a, b) = (at(c(w, 0.8)), at(c(w, -0.8)));
                    r.ensure((a.conj() - b).norm() <= 1e-12 * a.norm(), || format!("{kind:?} conjugation m={m}"));
                }
            }
        }
    }
    for m in [1, 2, 3] {
        for (e, g) in [(-2.0, -1.5), (-0.3, 0.0), (0.4, 0.8), (3.0, -1.5)] {
            for x in [0.2, 1.0, 3.5] {
                for kind in [CoulKind::C1, CoulKind::C4] {
                    let at = |e: C| coul_solution(kind, m, x, e, g, 1.0).unwrap();
                    let v = at(c(e, 0.0));
                    r.ensure(v.im.abs() <= 1e-12 * v.norm(), || format!("{kind:?} m={m} E={e} g={g}: {v}"));
                    let (a, b) = (at(c(e, 0.6)), at(c(e, -0.6)));
                    r.ensure((a.conj() - b).norm() <= 1e-12 * a.norm(), || format!("{kind:?} conjugation m={m}"));
                }
            }
        }
    }

    // λ → ±0: the regular solution and the densities approach the λ = 0 forms.
    for lambda in [SMALL_COUPLING, -SMALL_COUPLING] {
        for (m, u, w) in [(1, 1.3, 2.0), (2, 0.7, 5.0), (1, 2.0, -1.0)] {
            let near = osc_solution(OscKind::O1, m, u, c(w, 0.0), lambda, 1.0).unwrap();
            let free = osc_solution(OscKind::O1, m, u, c(w, 0.0), 0.0, 1.0).unwrap();
            r.ensure((near - free).norm() <= SMALL_COUPLING_TOL * free.norm().max(1.0), || format!("O1 λ={lambda} m={m}: {near} vs {free}"));
        }
    }
    for (m, zeta) in [(1, None), (3, None), (0, Some(0.4)), (0, Some(FRAC_PI_2))] {
        let with = |s: ProblemSpec| if let Some(z) = zeta { s.with_zeta(z) } else { s };
        let near = with(ProblemSpec::oscillator(m, -SMALL_COUPLING));
        let free = with(ProblemSpec::oscillator(m, 0.0));
        for e in [0.5, 2.0, 6.0, -3.0] {
            let (a, b) = (density(&near, e).unwrap(), density(&free, e).unwrap());
            r.ensure((a - b).abs() <= SMALL_COUPLING_TOL * b.max(1.0), || format!("σ′ λ=−0 m={m} ζ={zeta:?} E={e}: {a} vs {b}"));
        }
    }
}

// --------------------------------------------------------------------- 7

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn away_from_poles(z: C) -> bool {
    z.re > 0.0 || (z.re - z.re.round()).abs() > 0.05 || z.im.abs() > 0.05
}

fn disc(rng: &mut StdRng, r: f64) -> C {
    loop {
        let z = c(rng.random_range(-r..r), rng.random_range(-r..r));
        if z.norm() <= r {
            return z;
        }
    }
}

/// Ψ(a, b; z) for non-integer b from the two-Φ connection formula.
fn tricomi_noninteger(a: C, b: C, z: C, ctl: &SeriesControl) -> C {
    let t1 = gamma(1.0 - b).unwrap() * rgamma(a - b + 1.0) * kummer_m(a, b, z, ctl).unwrap();
    let t2 = gamma(b - 1.0).unwrap() * rgamma(a) * (z.ln() * (1.0 - b)).exp() * kummer_m(a - b + 1.0, 2.0 - b, z, ctl).unwrap();
    t1 + t2
}

fn criterion_7(r: &mut Report) {
    let ctl = SeriesControl::default();
    let mut rng = StdRng::seed_from_u64(7);
    const N: usize = 200;
    for _ in 0..N {
        // Γ, ψ recurrences.
        let z = disc(&mut rng, 10.0);
        if away_from_poles(z) && away_from_poles(z + 1.0) {
            r.ensure(rel(gamma(z + 1.0).unwrap(), z * gamma(z).unwrap()) <= SPECFUN_TOL, || format!("Γ recurrence z={z}"));
            let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
            r.ensure((d - 1.0 / z).norm() <= SPECFUN_TOL * (1.0 / z).norm().max(1.0), || format!("ψ recurrence z={z}"));
        }
        // Kummer transformation and contiguous relation.
        let a = disc(&mut rng, 5.0);
        let b = c(rng.random_range(0.2..6.0), rng.random_range(-2.0..2.0));
        let z = disc(&mut rng, 25.0);
        let lhs = kummer_m(a, b, z, &ctl).unwrap();
        let rhs = z.exp() * kummer_m(b - a, b, -z, &ctl).unwrap();
        r.ensure((lhs - rhs).norm() <= SPECFUN_TOL * lhs.norm(), || format!("Kummer transformation a={a} b={b} z={z}"));
        let bb = b + 1.0;
        let m0 = kummer_m(a, bb - 1.0, z, &ctl).unwrap();
        let m1 = kummer_m(a, bb, z, &ctl).unwrap();
        let m2 = kummer_m(a, bb + 1.0, z, &ctl).unwrap();
        let t = [bb * (bb - 1.0) * m0, bb * (1.0 - bb - z) * m1, z * (bb - a) * m2];
        let scale = t.iter().map(|x| x.norm()).fold(0.0, f64::max);
        r.ensure((t[0] + t[1] + t[2]).norm() <= SPECFUN_TOL * scale, || format!("Φ contiguous relation a={a} b={bb} z={z}"));
        // Ψ recurrence on the right half-plane.
        let a = disc(&mut rng, 3.0);
        let bi = rng.random_range(2..6);
        let z = c(rng.random_range(0.05..20.0), rng.random_range(-20.0..20.0));
        let u = tricomi_u(a, bi, z, &ctl).unwrap();
        let ua = tricomi_u(a + 1.0, bi, z, &ctl).unwrap();
        let ub = tricomi_u(a, bi - 1, z, &ctl).unwrap();
        let scale = u.norm().max((a * ua).norm()).max(ub.norm());
        r.ensure((u - a * ua - ub).norm() <= SPECFUN_TOL * scale, || format!("Ψ recurrence a={a} b={bi} z={z}"));
        // Bessel Wronskian W[J_n, Y_n] = 2/(πz) off the cut.
        let n = rng.random_range(0..8u32);
        let z = disc(&mut rng, 40.0);
        if z.norm() > 0.05 && !(z.re < 0.0 && z.im.abs() < 1e-6) {
            let (j, dj) = bessel_with_derivative(BesselKind::J, n, z, &ctl).unwrap();
            let (y, dy) = bessel_with_derivative(BesselKind::Y, n, z, &ctl).unwrap();
            let w = j * dy - dj * y;
            let want = 2.0 / (PI * z);
            let scale = (j * dy).norm().max((dj * y).norm()).max(want.norm());
            r.ensure((w - want).norm() <= SPECFUN_TOL * scale, || format!("Bessel Wronskian n={n} z={z}"));
        }
    }
    // Integer-b Ψ against the symmetric δ-regularized non-integer formula.
    let mut cases = vec![
        (c(0.7, 0.0), 1, c(1.3, 0.0)),
        (c(0.3, 0.4), 1, c(2.0, -1.0)),
        (c(1.2, -0.5), 2, c(0.5, 0.5)),
        (c(-0.4, 1.1), 3, c(3.0, 2.0)),
        (c(2.5, 0.0), 4, c(0.8, 0.0)),
    ];
    for _ in 0..20 {
        let a = disc(&mut rng, 2.0);
        let b = rng.random_range(1..5);
        let z = C::from_polar(rng.random_range(0.3..4.0), rng.random_range(-1.2..1.2));
        cases.push((a, b, z));
    }
    for (a, b, z) in cases {
        let bb = c(b as f64, 0.0);
        let reg = 0.5 * (tricomi_noninteger(a, bb + REGULARIZATION_DELTA, z, &ctl) + tricomi_noninteger(a, bb - REGULARIZATION_DELTA, z, &ctl));
        let exact = tricomi_u(a, b, z, &ctl).unwrap();
        r.ensure(rel(exact, reg) <= REGULARIZED_TOL, || format!("integer-b Ψ a={a} b={b} z={z}: {exact} vs {reg}"));
    }
}
