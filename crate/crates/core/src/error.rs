use thiserror::Error;

/// Failures surfaced by the numerical routines and the data model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: pole at non-positive integer {at}")]
    Pole { function: &'static str, at: i64 },

    #[error("{function}: no convergence within {terms} terms (achieved relative bound {bound:e})")]
    Accuracy {
        function: &'static str,
        terms: usize,
        bound: f64,
    },

    #[error("{function}: argument outside its domain: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid problem specification: {0}")]
    Validation(String),

    #[error("no sign change of the matching function on ({lo}, {hi})")]
    Bracket { lo: f64, hi: f64 },

    #[error("level index {index} unavailable: {reason}")]
    Index { index: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
