//! `dualspec` — batch front end for spectra, densities, wavefunctions,
//! duality checks and oracle verification.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage or regime error,
//! 3 tolerance breach.

mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dualspec::duality::{self, CoulPoint, IdentityCheck};
use dualspec::oracle;
use dualspec::{Complex64, Error, ProblemSpec, Selector, Support};
use serde::Serialize;

use output::{discrete_rows, write_csv, Cell, Continuous, Record};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TOLERANCE: u8 = 3;

#[derive(Parser)]
#[command(name = "dualspec", version, about = "Spectral analysis of the dual oscillator/Coulomb radial Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete levels with weights and the continuous support.
    Spectrum(SpectrumArgs),
    /// Spectral density σ′(E) on an energy grid.
    Density(DensityArgs),
    /// Normalized eigenfunction samples.
    Wavefunction(WavefunctionArgs),
    /// Checks of the oscillator ↔ Coulomb correspondence.
    Duality(DualityArgs),
    /// Compares closed-form levels with the finite-difference oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Osc,
    Coul,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long, value_enum)]
    theory: TheoryArg,
    /// Angular momentum m.
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
    /// λ (oscillator) or g (Coulomb).
    #[arg(long, allow_negative_numbers = true)]
    coupling: f64,
    /// Extension angle ζ in radians (families only).
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    kappa0: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

impl SpecArgs {
    fn spec(&self) -> ProblemSpec {
        let base = match self.theory {
            TheoryArg::Osc => ProblemSpec::oscillator(self.m, self.coupling),
            TheoryArg::Coul => ProblemSpec::coulomb(self.m, self.coupling),
        };
        let base = base.with_kappa0(self.kappa0);
        match self.zeta {
            Some(z) => base.with_zeta(z),
            None => base,
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Maximum number of discrete levels.
    #[arg(long, default_value_t = 5)]
    levels: usize,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, allow_negative_numbers = true)]
    emin: f64,
    #[arg(long, allow_negative_numbers = true)]
    emax: f64,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Discrete levels listed alongside (JSON only).
    #[arg(long, default_value_t = 5)]
    levels: usize,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["level", "energy"])))]
struct WavefunctionArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Discrete level index.
    #[arg(long)]
    level: Option<usize>,
    /// Energy on the continuous support.
    #[arg(long, allow_negative_numbers = true)]
    energy: Option<f64>,
    #[arg(long)]
    umin: f64,
    #[arg(long)]
    umax: f64,
    #[arg(long, default_value_t = 101)]
    samples: usize,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Check {
    Solutions,
    Coefficients,
    Spectra,
}

#[derive(Args)]
struct DualityArgs {
    #[arg(long, value_enum)]
    checks: Check,
    #[arg(long, allow_negative_numbers = true)]
    m: i32,
    /// Oscillator λ for `spectra` (must be positive); unused otherwise.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    coupling: f64,
    /// Shared extension angle for the m = 0 coefficient check.
    #[arg(long, allow_negative_numbers = true)]
    zeta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    kappa0: f64,
    /// Random samples (solutions/coefficients).
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Highest level index (spectra).
    #[arg(long, default_value_t = 20)]
    levels: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Maximum allowed deviation (defaults: 1e-8 identities, 1e-12 spectra).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, default_value_t = 3)]
    levels: usize,
    /// Relative tolerance (absolute below |E| = 1).
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) | Error::Domain { .. } | Error::Index { .. } => EXIT_USAGE,
            Error::Pole { .. } | Error::Accuracy { .. } | Error::Bracket { .. } => EXIT_FAILURE,
        };
        Failure { code, error: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            error,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: anyhow!(msg.into()),
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum(a, &mut out),
        Command::Density(a) => density(a, &mut out),
        Command::Wavefunction(a) => wavefunction(a, &mut out),
        Command::Duality(a) => duality_cmd(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn check_grid(lo: f64, hi: f64, samples: usize, what: &str) -> Outcome {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) || samples == 0 {
        return Err(usage(format!("{what}: need finite min <= max and at least one sample")));
    }
    Ok(())
}

fn spectrum(a: &SpectrumArgs, out: &mut impl Write) -> Outcome {
    let spec = a.spec.spec();
    let measure = dualspec::spectrum(&spec, a.levels)?;
    match a.spec.format {
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = discrete_rows(&measure.discrete)
                .iter()
                .map(|r| vec![Cell::Int(r.n as i64), Cell::Num(r.energy), Cell::Num(r.weight)])
                .collect();
            write_csv(out, &["n", "E", "weight"], &rows)?;
        }
        Format::Json => {
            Record::new(&spec, discrete_rows(&measure.discrete), Continuous::new(measure.support, vec![])).write_json(out)?;
        }
    }
    Ok(())
}

fn density(a: &DensityArgs, out: &mut impl Write) -> Outcome {
    check_grid(a.emin, a.emax, a.samples, "density")?;
    let spec = a.spec.spec();
    let measure = dualspec::spectrum(&spec, a.levels)?;
    let mut samples = Vec::with_capacity(a.samples);
    for e in linspace(a.emin, a.emax, a.samples) {
        let d = dualspec::density(&spec, e)?;
        if !d.is_finite() {
            return Err(usage(format!("density diverges at E = {e}; exclude this energy")));
        }
        samples.push([e, d]);
    }
    match a.spec.format {
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = samples.iter().map(|[e, d]| vec![Cell::Num(*e), Cell::Num(*d)]).collect();
            write_csv(out, &["E", "density"], &rows)?;
        }
        Format::Json => {
            Record::new(&spec, discrete_rows(&measure.discrete), Continuous::new(measure.support, samples)).write_json(out)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WaveReport {
    selector: Selector,
    norm_constant: f64,
    /// [r, ψ(r)] pairs.
    samples: Vec<[f64; 2]>,
}

fn wavefunction(a: &WavefunctionArgs, out: &mut impl Write) -> Outcome {
    check_grid(a.umin, a.umax, a.samples, "wavefunction")?;
    if a.umin <= 0.0 {
        return Err(usage("wavefunction: --umin must be positive"));
    }
    let spec = a.spec.spec();
    let selector = match (a.level, a.energy) {
        (Some(n), None) => Selector::Level(n),
        (None, Some(e)) => Selector::Energy(e),
        _ => return Err(usage("exactly one of --level or --energy is required")),
    };
    let wave = dualspec::eigenfunction(&spec, selector)?;
    let mut samples = Vec::with_capacity(a.samples);
    for r in linspace(a.umin, a.umax, a.samples) {
        let v = wave.eval_real(r)?;
        if !v.is_finite() {
            return Err(Failure::from(anyhow!("non-finite wavefunction value at r = {r}")));
        }
        samples.push([r, v]);
    }
    match a.spec.format {
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = samples.iter().map(|[r, v]| vec![Cell::Num(*r), Cell::Num(*v)]).collect();
            write_csv(out, &["r", "psi"], &rows)?;
        }
        Format::Json => {
            let measure = dualspec::spectrum(&spec, 0)?;
            let report = WaveReport {
                selector,
                norm_constant: wave.norm_constant,
                samples,
            };
            Record::new(&spec, vec![], Continuous::new(measure.support, vec![]))
                .with_report(report)?
                .write_json(out)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckRow {
    check: String,
    max_deviation: f64,
    evaluated: usize,
    excluded: usize,
}

impl From<&IdentityCheck> for CheckRow {
    fn from(c: &IdentityCheck) -> Self {
        Self {
            check: c.name.clone(),
            max_deviation: c.max_deviation,
            evaluated: c.evaluated,
            excluded: c.excluded.len(),
        }
    }
}

#[derive(Serialize)]
struct DualityReport {
    checks: Check,
    tolerance: f64,
    max_deviation: f64,
    pass: bool,
    rows: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<duality::LevelPair>>,
}

fn duality_cmd(a: &DualityArgs, out: &mut impl Write) -> Outcome {
    let spec = {
        let s = ProblemSpec::oscillator(a.m, a.coupling).with_kappa0(a.kappa0);
        match a.zeta {
            Some(z) => s.with_zeta(z),
            None => s,
        }
    };
    let mut levels = None;
    let (rows, tol) = match a.checks {
        Check::Solutions => {
            let samples = duality::random_samples(a.samples, a.seed);
            // m = 0 pairs the logarithmic solution; |m| ≥ 1 the singular one.
            let channels: [u8; 3] = if a.m == 0 { [1, 2, 3] } else { [1, 3, 4] };
            let rows = channels
                .into_iter()
                .map(|k| duality::verify_solution_identity(k, a.m, &samples, a.kappa0).map(|c| CheckRow::from(&c)))
                .collect::<dualspec::Result<Vec<_>>>()?;
            (rows, a.tol.unwrap_or(1e-8))
        }
        Check::Coefficients => {
            let samples: Vec<(Complex64, f64)> = duality::random_samples(a.samples, a.seed)
                .iter()
                .map(|p: &CoulPoint| (p.e, p.g))
                .collect();
            let zeta = if a.m == 0 { Some(a.zeta.unwrap_or(0.0)) } else { None };
            let checks = duality::verify_coefficient_identities(a.m, &samples, zeta, a.kappa0)?;
            (checks.iter().map(CheckRow::from).collect(), a.tol.unwrap_or(1e-8))
        }
        Check::Spectra => {
            if !(a.coupling > 0.0) {
                return Err(usage("duality spectra: --coupling (λ) must be positive"));
            }
            let c = duality::verify_spectrum_correspondence(a.m, a.coupling, a.levels, a.kappa0)?;
            let row = CheckRow {
                check: "levels".into(),
                max_deviation: c.max_deviation,
                evaluated: c.pairs.len(),
                excluded: 0,
            };
            levels = Some(c.pairs);
            (vec![row], a.tol.unwrap_or(1e-12))
        }
    };
    let max_deviation = rows.iter().fold(0.0f64, |m, r| m.max(r.max_deviation));
    let pass = max_deviation <= tol && rows.iter().all(|r| r.evaluated > 0);
    match a.format {
        Format::Csv => {
            let table: Vec<Vec<Cell>> = rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Text(r.check.clone()),
                        Cell::Num(r.max_deviation),
                        Cell::Int(r.evaluated as i64),
                        Cell::Int(r.excluded as i64),
                    ]
                })
                .collect();
            write_csv(&mut *out, &["check", "max_deviation", "evaluated", "excluded"], &table)?;
        }
        Format::Json => {
            let report = DualityReport {
                checks: a.checks,
                tolerance: tol,
                max_deviation,
                pass,
                rows,
                levels,
            };
            Record::new(&spec, vec![], Continuous::new(Support::Empty, vec![]))
                .with_report(report)?
                .write_json(&mut *out)?;
        }
    }
    let verdict = if pass { "pass" } else { "FAIL" };
    eprintln!("max deviation {max_deviation:e} (tolerance {tol:e}): {verdict}");
    if pass {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_TOLERANCE,
            error: anyhow!("duality check exceeded tolerance"),
        })
    }
}

fn verify(a: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let spec = a.spec.spec();
    let measure = dualspec::spectrum(&spec, a.levels)?;
    // Threshold (E = 0) states are outside the oracle's reach.
    let closed: Vec<f64> = measure.energies().into_iter().filter(|e| *e != 0.0).collect();
    if closed.is_empty() {
        return Err(usage("verify: this problem has no discrete levels below threshold to compare"));
    }
    let grid = oracle::recommended_grid(&spec, &closed);
    let oracle_levels = oracle::fd_eigenvalues(&spec, &grid, closed.len())?;
    let report = oracle::compare_levels(&closed, &oracle_levels, a.tol);
    match a.spec.format {
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Int(r.n as i64),
                        Cell::Num(r.closed_form),
                        Cell::Num(r.oracle),
                        Cell::Num(r.rel_error),
                        Cell::Text(if r.within_tolerance { "pass" } else { "fail" }.into()),
                    ]
                })
                .collect();
            write_csv(&mut *out, &["n", "closed_form", "oracle", "rel_error", "status"], &rows)?;
        }
        Format::Json => {
            Record::new(&spec, discrete_rows(&measure.discrete), Continuous::new(measure.support, vec![]))
                .with_report(serde_json::json!({ "grid": grid, "comparison": &report }))
                .map_err(Failure::from)?
                .write_json(&mut *out)?;
        }
    }
    let verdict = if report.pass { "pass" } else { "FAIL" };
    eprintln!("max relative deviation {:e} (tolerance {:e}): {verdict}", report.max_error, a.tol);
    if report.pass {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_TOLERANCE,
            error: anyhow!("oracle levels {:?} outside tolerance", report.failures()),
        })
    }
}
