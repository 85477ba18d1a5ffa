//! Versioned output schema: CSV tables and the JSON record.

use std::io::Write;

use anyhow::Result;
use dualspec::{Atom, ProblemSpec, Support, Theory};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1.0";

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros
/// removed, exponent form outside 1e−4 ≤ |x| < 1e17.
pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (16 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Echo of the problem specification embedded in every record.
#[derive(Debug, Serialize)]
pub struct SpecEcho {
    pub theory: &'static str,
    pub m: i32,
    pub coupling: f64,
    pub kappa0: f64,
    pub zeta: Option<f64>,
}

impl From<&ProblemSpec> for SpecEcho {
    fn from(spec: &ProblemSpec) -> Self {
        Self {
            theory: match spec.theory {
                Theory::Oscillator => "osc",
                Theory::Coulomb => "coul",
            },
            m: spec.m,
            coupling: spec.coupling,
            kappa0: spec.kappa0,
            zeta: spec.zeta(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DiscreteRow {
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: f64,
    pub weight: f64,
}

pub fn discrete_rows(atoms: &[Atom]) -> Vec<DiscreteRow> {
    atoms
        .iter()
        .enumerate()
        .map(|(n, a)| DiscreteRow {
            n,
            energy: a.energy,
            weight: a.weight,
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct Continuous {
    pub support: &'static str,
    /// [E, σ′(E)] pairs.
    pub samples: Vec<[f64; 2]>,
}

impl Continuous {
    pub fn new(support: Support, samples: Vec<[f64; 2]>) -> Self {
        Self {
            support: support.label(),
            samples,
        }
    }
}

/// The top-level JSON object. Command-specific payloads (wavefunction
/// samples, duality and oracle reports) go under `report`.
#[derive(Debug, Serialize)]
pub struct Record {
    pub schema_version: &'static str,
    pub spec: SpecEcho,
    pub discrete: Vec<DiscreteRow>,
    pub continuous: Continuous,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

impl Record {
    pub fn new(spec: &ProblemSpec, discrete: Vec<DiscreteRow>, continuous: Continuous) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            spec: spec.into(),
            discrete,
            continuous,
            report: None,
        }
    }

    pub fn with_report(mut self, report: impl Serialize) -> Result<Self> {
        self.report = Some(serde_json::to_value(report)?);
        Ok(self)
    }

    pub fn write_json(&self, out: impl Write) -> Result<()> {
        let mut out = out;
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)?;
        Ok(())
    }
}

/// A CSV table cell.
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => g17(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

pub fn write_csv(out: impl Write, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}
