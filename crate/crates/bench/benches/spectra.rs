//! Throughput of the main entry points: closed-form spectra, densities,
//! duality identity checks and the finite-difference oracle.

use std::f64::consts::FRAC_PI_2;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dualspec::{duality, oracle, ProblemSpec};

fn spectra(c: &mut Criterion) {
    let unique = ProblemSpec::oscillator(2, 1.0);
    c.bench_function("oscillator spectrum, unique cell, 11 levels", |b| {
        b.iter(|| dualspec::spectrum(black_box(&unique), 11).unwrap())
    });
    let family = ProblemSpec::oscillator(0, 1.0).with_zeta(0.7);
    c.bench_function("oscillator spectrum, m=0 family, 5 levels", |b| {
        b.iter(|| dualspec::spectrum(black_box(&family), 5).unwrap())
    });
    let family = ProblemSpec::coulomb(1, -1.0).with_zeta(0.3);
    c.bench_function("coulomb spectrum, m=1 family, 5 levels", |b| {
        b.iter(|| dualspec::spectrum(black_box(&family), 5).unwrap())
    });
}

fn densities(c: &mut Criterion) {
    let energies: Vec<f64> = (0..100).map(|i| 0.05 + 0.1 * i as f64).collect();
    for (name, spec) in [
        ("oscillator density, m=0 family, lambda<0", ProblemSpec::oscillator(0, -1.0).with_zeta(0.2)),
        ("coulomb density, m=2, g>0", ProblemSpec::coulomb(2, 1.0)),
        ("coulomb density, m=1 family", ProblemSpec::coulomb(1, -1.0).with_zeta(-0.4)),
    ] {
        c.bench_function(&format!("{name}, 100 energies"), |b| {
            b.iter(|| energies.iter().map(|&e| dualspec::density(&spec, e).unwrap()).sum::<f64>())
        });
    }
}

fn duality_checks(c: &mut Criterion) {
    let samples = duality::random_samples(100, 7);
    c.bench_function("duality solution identity, m=2, 100 samples", |b| {
        b.iter(|| duality::verify_solution_identity(4, 2, black_box(&samples), 1.0).unwrap())
    });
    c.bench_function("duality spectrum correspondence, m=1, n<=20", |b| {
        b.iter(|| duality::verify_spectrum_correspondence(1, 4.0, 20, 1.0).unwrap())
    });
}

fn oracle_solves(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let spec = ProblemSpec::oscillator(1, 1.0);
    let grid = oracle::GridSpec::linear(1e-3, 15.0, 4000);
    group.bench_function("fd, oscillator m=1, 4000 points, 3 levels", |b| {
        b.iter(|| oracle::fd_eigenvalues(&spec, &grid, 3).unwrap())
    });
    let spec = ProblemSpec::coulomb(0, -1.0).with_zeta(FRAC_PI_2);
    group.bench_function("shooting, coulomb m=0 ground state", |b| {
        b.iter(|| oracle::shoot_eigenvalue(&spec, (-1.1, -0.9)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, spectra, densities, duality_checks, oracle_solves);
criterion_main!(benches);
