//! Independent numerical oracle: a finite-difference eigensolver and a
//! shooting integrator for the radial equations.
//!
//! Nothing here uses the special functions or closed forms of the other
//! modules; only the differential operator, the small-r boundary behaviour
//! of the chosen extension, and a Dirichlet wall at r_max enter.
//!
//! On logarithmic grids the equation −ψ″ + Vψ = Eψ is rewritten with
//! r = e^t, ψ = r^{1/2}φ as −φ_tt + Q(r)φ = E r²φ, where Q = m² + λu⁴
//! (oscillator) or Q = m²/4 + gx (Coulomb); with χ = rφ this is a standard
//! symmetric tridiagonal problem.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::{classify, zeta_sin_cos, ProblemSpec, RegimeClass, SpectralMeasure, Theory};
use crate::roots::bracketed;
use crate::specfun::EULER_GAMMA;

/// Node placement of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Radial grid [r_min, r_max] with `points` nodes (endpoints included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn linear(u_min: f64, u_max: f64, points: usize) -> Self {
        Self {
            u_min,
            u_max,
            points,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(u_min: f64, u_max: f64, points: usize) -> Self {
        Self {
            u_min,
            u_max,
            points,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.u_min > 0.0 && self.u_min < self.u_max && self.u_max.is_finite()) {
            return Err(Error::Validation(format!(
                "grid needs 0 < u_min < u_max < inf, got ({}, {})",
                self.u_min, self.u_max
            )));
        }
        if self.points < 100 {
            return Err(Error::Validation(format!("grid needs at least 100 points, got {}", self.points)));
        }
        Ok(())
    }

    /// The same interval with the step halved.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points - 1,
            ..*self
        }
    }

    /// Node positions r_0 … r_{points−1}.
    pub fn nodes(&self) -> Vec<f64> {
        let n = self.points - 1;
        match self.spacing {
            Spacing::Linear => {
                let h = (self.u_max - self.u_min) / n as f64;
                (0..=n).map(|i| self.u_min + h * i as f64).collect()
            }
            Spacing::Log => {
                let (a, b) = (self.u_min.ln(), self.u_max.ln());
                let h = (b - a) / n as f64;
                (0..=n).map(|i| (a + h * i as f64).exp()).collect()
            }
        }
    }

    fn step(&self) -> f64 {
        let n = (self.points - 1) as f64;
        match self.spacing {
            Spacing::Linear => (self.u_max - self.u_min) / n,
            Spacing::Log => (self.u_max / self.u_min).ln() / n,
        }
    }
}

/// Condition imposed at r_min; r_max always carries a Dirichlet wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoundaryCondition {
    /// ψ(r_min) = 0.
    Dirichlet,
    /// ψ follows the extension's small-r form ψ_as between the first two nodes.
    Asymptotic,
}

impl BoundaryCondition {
    /// Asymptotic matching for extension families, Dirichlet otherwise.
    pub fn for_spec(spec: &ProblemSpec) -> Self {
        if spec.admits_family() {
            BoundaryCondition::Asymptotic
        } else {
            BoundaryCondition::Dirichlet
        }
    }
}

/// Small-r form of the cell's domain functions: value and r·d/dr.
#[derive(Debug, Clone, Copy)]
enum SmallR {
    /// (κ₀r)^p
    Power(f64),
    /// (κ₀r)^{1/2}φ, y = κ₀r, b = a cos ζ, with the correction forced by
    /// the equation: φ = sin ζ + b ln y + ĝy(sin ζ − 2b + b ln y) for the
    /// Coulomb problem (ĝ = g/κ₀), φ = sin ζ + b ln y − (Êy²/4)(sin ζ − b +
    /// b ln y) for the oscillator (Ê = E/κ₀², `oscillator` set).
    Log { s: f64, c: f64, a: f64, g_hat: f64, oscillator: bool },
    /// y sin ζ·R + cos ζ·S, y = κ₀r, with the Frobenius series of the
    /// m = ±1 Coulomb equation carried to second order:
    /// R = y + ĝy²/2 + …, S = 1 + (𝐂 − 1)ĝy + ĝy ln y + …, 𝐂 = 2γ (the
    /// constant carried by the logarithmic solution). The O(y²) terms of S
    /// and O(y³) of R depend on the energy.
    Linear { s: f64, c: f64, g_hat: f64 },
}

impl SmallR {
    fn of(spec: &ProblemSpec, cell: &RegimeClass) -> Self {
        let n = spec.m.unsigned_abs() as f64;
        let zeta = spec.zeta().unwrap_or(0.0);
        let (s, c) = zeta_sin_cos(zeta);
        let g_hat = spec.coupling / spec.kappa0;
        match (spec.theory, cell) {
            (Theory::Oscillator, _) if spec.m == 0 => SmallR::Log { s, c, a: 1.0, g_hat: 0.0, oscillator: true },
            (Theory::Oscillator, _) => SmallR::Power(0.5 + n),
            (Theory::Coulomb, RegimeClass::CoulFamilyZero { .. }) => SmallR::Log { s, c, a: 0.5, g_hat, oscillator: false },
            (Theory::Coulomb, RegimeClass::CoulFamilyOne { .. }) => SmallR::Linear { s, c, g_hat },
            (Theory::Coulomb, _) => SmallR::Power(0.5 + 0.5 * n),
        }
    }

    /// ψ_as(r) and r ψ_as′(r) at energy e.
    fn eval(&self, r: f64, k0: f64, e: f64) -> (f64, f64) {
        let q = k0 * r;
        match *self {
            SmallR::Power(p) => {
                let v = q.powf(p);
                (v, p * v)
            }
            SmallR::Log { s, c, a, g_hat, oscillator } => {
                let (sq, l, b) = (q.sqrt(), q.ln(), a * c);
                let (phi, y_dphi) = if oscillator {
                    let w = 0.25 * e / (k0 * k0) * q * q;
                    (s + b * l - w * (s - b + b * l), b - w * (2.0 * s - b + 2.0 * b * l))
                } else {
                    (
                        s + b * l + g_hat * q * (s - 2.0 * b + b * l),
                        b + g_hat * q * (s - b + b * l),
                    )
                };
                (sq * phi, sq * (0.5 * phi + y_dphi))
            }
            SmallR::Linear { s, c, g_hat } => {
                let (l, e_hat, g2) = (q.ln(), e / (k0 * k0), g_hat * g_hat);
                let r3 = (0.5 * g2 - e_hat) / 6.0;
                let reg = q + 0.5 * g_hat * q * q + r3 * q.powi(3);
                let y_dreg = q + g_hat * q * q + 3.0 * r3 * q.powi(3);
                let a1 = g_hat * (2.0 * EULER_GAMMA - 1.0);
                let d2 = 0.5 * g2;
                let b2 = 0.5 * (g_hat * a1 - e_hat - 1.5 * g2);
                let sing = 1.0 + a1 * q + g_hat * q * l + q * q * (b2 + d2 * l);
                let y_dsing = q * (a1 + g_hat + g_hat * l) + q * q * (2.0 * b2 + d2 + 2.0 * d2 * l);
                (s * reg + c * sing, s * y_dreg + c * y_dsing)
            }
        }
    }

    /// Whether the form depends on the energy (boundary condition must be
    /// iterated to self-consistency).
    fn energy_dependent(&self) -> bool {
        matches!(self, SmallR::Linear { .. } | SmallR::Log { oscillator: true, .. })
    }
}

/// The radial operator in Liouville form: −φ_tt + Q(r)φ = E r²φ.
struct Operator {
    theory: Theory,
    m2: f64,
    coupling: f64,
    kappa0: f64,
    small_r: SmallR,
}

impl Operator {
    fn new(spec: &ProblemSpec) -> Result<Self> {
        let cell = classify(spec)?;
        Ok(Self {
            theory: spec.theory,
            m2: (spec.m as f64).powi(2),
            coupling: spec.coupling,
            kappa0: spec.kappa0,
            small_r: SmallR::of(spec, &cell),
        })
    }

    /// Q(r) = r²V(r) + 1/4.
    fn q(&self, r: f64) -> f64 {
        match self.theory {
            Theory::Oscillator => self.m2 + self.coupling * r.powi(4),
            Theory::Coulomb => 0.25 * self.m2 + self.coupling * r,
        }
    }

    /// V(r) of −ψ″ + Vψ = Eψ.
    fn v(&self, r: f64) -> f64 {
        (self.q(r) - 0.25) / (r * r)
    }
}

/// Symmetric tridiagonal matrix: diagonal `a`, off-diagonal `b` (len n−1).
struct Tridiagonal {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below x (Sturm count from LDLᵀ pivots).
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.a.len() {
            let off = if i == 0 { 0.0 } else { self.b[i - 1] * self.b[i - 1] };
            d = self.a[i] - x - if i == 0 { 0.0 } else { off / d };
            if d == 0.0 {
                d = -f64::EPSILON * (self.a[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin bounds of the spectrum.
    fn bounds(&self) -> (f64, f64) {
        let n = self.a.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.b[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.b[i].abs() } else { 0.0 };
            lo = lo.min(self.a[i] - r);
            hi = hi.max(self.a[i] + r);
        }
        (lo, hi)
    }

    /// k-th smallest eigenvalue by bisection on the Sturm count.
    fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.bounds();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for an (accurate) eigenvalue by inverse iteration.
    fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.a.len();
        let shift = lambda + 1e-10 * lambda.abs().max(1.0);
        let mut v = vec![1.0; n];
        for _ in 0..3 {
            v = self.solve_shifted(shift, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    /// (T − σI)x = rhs by the Thomas algorithm with pivot guarding.
    fn solve_shifted(&self, sigma: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.a.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let guard = |x: f64| if x.abs() < 1e-300 { 1e-300 } else { x };
        let mut piv = guard(self.a[0] - sigma);
        if n > 1 {
            c[0] = self.b[0] / piv;
        }
        d[0] = rhs[0] / piv;
        for i in 1..n {
            piv = guard(self.a[i] - sigma - self.b[i - 1] * c[i - 1]);
            if i + 1 < n {
                c[i] = self.b[i] / piv;
            }
            d[i] = (rhs[i] - self.b[i - 1] * d[i - 1]) / piv;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        d
    }
}

/// Assembles the discretized operator on the interior nodes 1 … points−2.
fn assemble(op: &Operator, grid: &GridSpec, bc: BoundaryCondition, e: f64) -> (Tridiagonal, Vec<f64>) {
    let r = grid.nodes();
    let h = grid.step();
    let h2 = h * h;
    let inner = &r[1..r.len() - 1];
    let n = inner.len();
    let k0 = op.kappa0;
    match grid.spacing {
        Spacing::Linear => {
            let mut a: Vec<f64> = inner.iter().map(|&u| 2.0 / h2 + op.v(u)).collect();
            let b = vec![-1.0 / h2; n - 1];
            if bc == BoundaryCondition::Asymptotic {
                let ratio = op.small_r.eval(r[0], k0, e).0 / op.small_r.eval(r[1], k0, e).0;
                a[0] -= ratio / h2;
            }
            (Tridiagonal { a, b }, inner.to_vec())
        }
        Spacing::Log => {
            let mut a: Vec<f64> = inner.iter().map(|&x| (2.0 / h2 + op.q(x)) / (x * x)).collect();
            let b: Vec<f64> = inner.windows(2).map(|w| -1.0 / (h2 * w[0] * w[1])).collect();
            if bc == BoundaryCondition::Asymptotic {
                // φ = r^{-1/2}ψ; the ghost value φ_0 = ratio·φ_1.
                let phi = |x: f64| op.small_r.eval(x, k0, e).0 / x.sqrt();
                let ratio = phi(r[0]) / phi(r[1]);
                a[0] -= ratio / (h2 * inner[0] * inner[0]);
            }
            (Tridiagonal { a, b }, inner.to_vec())
        }
    }
}

/// Lowest `count` eigenvalues of the discretized operator.
pub fn fd_eigenvalues(spec: &ProblemSpec, grid: &GridSpec, count: usize) -> Result<Vec<f64>> {
    fd_eigenvalues_with(spec, grid, BoundaryCondition::for_spec(spec), count)
}

/// [`fd_eigenvalues`] with an explicit small-r condition.
pub fn fd_eigenvalues_with(spec: &ProblemSpec, grid: &GridSpec, bc: BoundaryCondition, count: usize) -> Result<Vec<f64>> {
    grid.validate()?;
    let op = Operator::new(spec)?;
    if count > grid.points - 2 {
        return Err(domain("fd_eigenvalues", "more eigenvalues requested than grid unknowns"));
    }
    Ok((0..count).map(|k| level(&op, grid, bc, k).0).collect())
}

/// k-th eigenvalue and its matrix; energy-dependent boundary conditions
/// are iterated until the eigenvalue is self-consistent.
fn level(op: &Operator, grid: &GridSpec, bc: BoundaryCondition, k: usize) -> (f64, Tridiagonal, Vec<f64>) {
    let (mut t, mut r) = assemble(op, grid, bc, 0.0);
    let mut e = t.eigenvalue(k);
    if bc == BoundaryCondition::Asymptotic && op.small_r.energy_dependent() {
        for _ in 0..20 {
            (t, r) = assemble(op, grid, bc, e);
            let next = t.eigenvalue(k);
            let done = (next - e).abs() <= 1e-14 * e.abs().max(1e-3);
            e = next;
            if done {
                break;
            }
        }
    }
    (e, t, r)
}

/// Richardson-extrapolated eigenvalues from the grid and its refinement
/// (second-order scheme: E ≈ (4E_{h/2} − E_h)/3).
pub fn fd_eigenvalues_extrapolated(spec: &ProblemSpec, grid: &GridSpec, count: usize) -> Result<Vec<f64>> {
    let coarse = fd_eigenvalues(spec, grid, count)?;
    let fine = fd_eigenvalues(spec, &grid.refined(), count)?;
    Ok(coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect())
}

/// A discrete eigenfunction sampled on the grid nodes, ∫ψ² dr = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdEigenfunction {
    pub energy: f64,
    pub r: Vec<f64>,
    pub psi: Vec<f64>,
}

/// Lowest `count` eigenpairs; eigenfunctions are normalized and signed so
/// that the first sizeable value is positive.
pub fn fd_eigenfunctions(spec: &ProblemSpec, grid: &GridSpec, count: usize) -> Result<Vec<FdEigenfunction>> {
    grid.validate()?;
    let op = Operator::new(spec)?;
    let bc = BoundaryCondition::for_spec(spec);
    let h = grid.step();
    (0..count)
        .map(|k| {
            let (e, t, r) = level(&op, grid, bc, k);
            let v = t.eigenvector(e);
            let mut psi: Vec<f64> = match grid.spacing {
                Spacing::Linear => v.iter().map(|x| x / h.sqrt()).collect(),
                // χ = rφ has Σχ² h = ∫ψ² dr; ψ = r^{1/2}φ = r^{-1/2}χ.
                Spacing::Log => v.iter().zip(&r).map(|(x, rr)| x / (h.sqrt() * rr.sqrt())).collect(),
            };
            let peak = psi.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if let Some(first) = psi.iter().find(|x| x.abs() > 1e-3 * peak) {
                if *first < 0.0 {
                    psi.iter_mut().for_each(|x| *x = -*x);
                }
            }
            Ok(FdEigenfunction { energy: e, r: r.clone(), psi })
        })
        .collect()
}

/// Shooting resolution: RK4 steps per unit of t = ln r.
const SHOOT_STEPS_PER_UNIT: f64 = 2000.0;

/// Integrates −φ_tt + (Q − E r²)φ = 0 from t0 to t1 (either direction).
fn rk4(op: &Operator, e: f64, t0: f64, t1: f64, mut y: [f64; 2]) -> [f64; 2] {
    let steps = ((t1 - t0).abs() * SHOOT_STEPS_PER_UNIT).ceil().max(1.0) as usize;
    let h = (t1 - t0) / steps as f64;
    let f = |t: f64, y: [f64; 2]| {
        let r = t.exp();
        [y[1], (op.q(r) - e * r * r) * y[0]]
    };
    let mut t = t0;
    for _ in 0..steps {
        let k1 = f(t, y);
        let k2 = f(t + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
        let k3 = f(t + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
        let k4 = f(t + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        // Keep magnitudes in range; only the ratio matters.
        let s = y[0].abs().max(y[1].abs());
        if s > 1e100 {
            y = [y[0] / s, y[1] / s];
        }
        t += h;
    }
    y
}

/// Outermost classically allowed point for energy e (E r² > Q), clamped to the grid.
fn matching_point(op: &Operator, e: f64, grid: &GridSpec) -> f64 {
    let nodes = grid.nodes();
    let mut last = None;
    for &r in &nodes {
        if e * r * r > op.q(r) {
            last = Some(r);
        }
    }
    let r = last.unwrap_or(0.5 * (grid.u_min + grid.u_max));
    r.clamp(grid.u_min * 1.5, grid.u_max / 1.5)
}

/// Eigenvalue inside `bracket` by shooting on [`shooting_grid`].
pub fn shoot_eigenvalue(spec: &ProblemSpec, bracket: (f64, f64)) -> Result<f64> {
    shoot_eigenvalue_on(spec, &shooting_grid(spec, bracket), bracket)
}

/// Eigenvalue inside `bracket` by shooting from both ends of `grid` and
/// matching the normalized Wronskian of the two solutions at the outermost
/// classical turning point.
pub fn shoot_eigenvalue_on(spec: &ProblemSpec, grid: &GridSpec, bracket: (f64, f64)) -> Result<f64> {
    grid.validate()?;
    let op = Operator::new(spec)?;
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(domain("shoot_eigenvalue", "bracket must satisfy lo < hi"));
    }
    let tm = matching_point(&op, 0.5 * (lo + hi), grid).ln();
    let (ta, tb) = (grid.u_min.ln(), grid.u_max.ln());
    let k0 = op.kappa0;
    let mismatch = |e: f64| -> Result<(f64, Option<f64>)> {
        let (psi, rdpsi) = op.small_r.eval(grid.u_min, k0, e);
        // φ = r^{-1/2}ψ, φ_t = r^{-1/2}(rψ′ − ψ/2)
        let s = grid.u_min.sqrt();
        let out = rk4(&op, e, ta, tm, [psi / s, (rdpsi - 0.5 * psi) / s]);
        let inn = rk4(&op, e, tb, tm, [0.0, -1.0]);
        let w = out[0] * inn[1] - out[1] * inn[0];
        let norm = out[0].hypot(out[1]) * inn[0].hypot(inn[1]);
        Ok((w / norm, None))
    };
    bracketed(mismatch, lo, hi, 1e-13)
}

/// A log grid suited to states with the given energies: r_min well inside
/// the small-r regime of the deepest state, r_max where the shallowest
/// state has decayed by ~e⁻³⁰. Zero energies (threshold states, which the
/// oracle does not resolve) are ignored.
pub fn recommended_grid(spec: &ProblemSpec, energies: &[f64]) -> GridSpec {
    let energies: Vec<f64> = energies.iter().copied().filter(|e| *e != 0.0).collect();
    let energies = if energies.is_empty() { vec![1.0] } else { energies };
    let e_max = energies.iter().fold(0.0f64, |m, e| m.max(e.abs())).max(1e-12);
    match spec.theory {
        Theory::Oscillator => {
            let lambda = spec.coupling.abs().max(1e-12);
            let r_max = (e_max / lambda).sqrt() + (60.0 / lambda.sqrt()).sqrt();
            let r_min = 1e-3 * (lambda.sqrt() / e_max).sqrt().min(1.0).min(1.0 / spec.kappa0);
            GridSpec::log(r_min, r_max, 4000)
        }
        Theory::Coulomb => {
            let e_min = energies.iter().fold(f64::INFINITY, |m, e| m.min(e.abs())).max(1e-12);
            let (deep, shallow) = (e_max.sqrt(), e_min.sqrt());
            let r_max = 2.0 * spec.coupling.abs() / e_min + 40.0 / shallow;
            let base = if spec.m == 0 && spec.admits_family() { 1e-5 } else { 1e-3 };
            let r_min = base * (1.0 / deep).min(1.0 / spec.kappa0).min(1.0);
            GridSpec::log(r_min, r_max, 8000)
        }
    }
}

/// Defaults for [`shoot_eigenvalue`]: a grid wide enough for the bracket.
pub fn shooting_grid(spec: &ProblemSpec, bracket: (f64, f64)) -> GridSpec {
    recommended_grid(spec, &[bracket.0, bracket.1])
}

/// Finite-difference eigenvalues with a Richardson error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdReport {
    pub grid: GridSpec,
    /// Eigenvalues on `grid`.
    pub eigenvalues: Vec<f64>,
    /// Extrapolated from `grid` and its refinement.
    pub extrapolated: Vec<f64>,
    /// |raw − extrapolated| per level.
    pub error_estimates: Vec<f64>,
    /// Set when an error estimate exceeds the requested tolerance
    /// (relative, absolute below |E| = 1).
    pub warning: Option<String>,
}

pub fn fd_report(spec: &ProblemSpec, grid: &GridSpec, count: usize, tol: f64) -> Result<FdReport> {
    let eigenvalues = fd_eigenvalues(spec, grid, count)?;
    let fine = fd_eigenvalues(spec, &grid.refined(), count)?;
    let extrapolated: Vec<f64> = eigenvalues.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
    let error_estimates: Vec<f64> = eigenvalues.iter().zip(&extrapolated).map(|(a, b)| (a - b).abs()).collect();
    let coarse: Vec<usize> = error_estimates
        .iter()
        .zip(&extrapolated)
        .enumerate()
        .filter(|(_, (err, e))| **err > tol * e.abs().max(1.0))
        .map(|(n, _)| n)
        .collect();
    let warning = (!coarse.is_empty()).then(|| format!("grid too coarse for levels {coarse:?} at tolerance {tol:e}"));
    Ok(FdReport {
        grid: *grid,
        eigenvalues,
        extrapolated,
        error_estimates,
        warning,
    })
}

/// One row of a closed-form vs. oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelComparison {
    pub n: usize,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub within_tolerance: bool,
}

/// Comparison report; a level passes when its deviation relative to
/// max(|E|, 1) is within `tol`. A count mismatch is reported (and fails
/// the report) but the common levels are still compared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumComparison {
    pub rows: Vec<LevelComparison>,
    pub closed_count: usize,
    pub oracle_count: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SpectrumComparison {
    /// Indices of the levels outside tolerance.
    pub fn failures(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.within_tolerance).map(|r| r.n).collect()
    }
}

/// Compares the discrete part of a closed-form measure with oracle levels.
pub fn compare_spectra(closed: &SpectralMeasure, oracle: &[f64], tol: f64) -> SpectrumComparison {
    let levels: Vec<f64> = closed.discrete.iter().map(|a| a.energy).collect();
    compare_levels(&levels, oracle, tol)
}

/// [`compare_spectra`] on plain level lists.
pub fn compare_levels(closed: &[f64], oracle: &[f64], tol: f64) -> SpectrumComparison {
    let rows: Vec<LevelComparison> = closed
        .iter()
        .zip(oracle)
        .enumerate()
        .map(|(n, (&c, &o))| {
            let abs_error = (c - o).abs();
            let rel_error = abs_error / c.abs().max(1.0);
            LevelComparison {
                n,
                closed_form: c,
                oracle: o,
                abs_error,
                rel_error,
                within_tolerance: rel_error <= tol,
            }
        })
        .collect();
    let max_error = rows.iter().fold(0.0f64, |m, r| m.max(r.rel_error));
    let pass = closed.len() == oracle.len() && rows.iter().all(|r| r.within_tolerance);
    SpectrumComparison {
        rows,
        closed_count: closed.len(),
        oracle_count: oracle.len(),
        max_error,
        tolerance: tol,
        pass,
    }
}
