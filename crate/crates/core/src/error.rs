use thiserror::Error;

use crate::roc_core::PairReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid likelihood ratio {0}: must be nonnegative or +inf")]
    InvalidRatio(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid curve at vertex {index}: {reason}")]
    InvalidCurve { index: usize, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a valid H0 likelihood-ratio law: sum of v*mass = {0}")]
    NotH0Law(f64),

    #[error("not a valid H1 likelihood-ratio law: sum of mass/v = {0}")]
    NotH1Law(f64),

    #[error("not an optimal ROC: {0}")]
    NotOptimalRoc(String),

    #[error(
        "empirical estimator undefined for one-sided samples: {estimator} needs at least one \
         sample of each label (n0 = {n0}, n1 = {n1})"
    )]
    OneSided {
        estimator: &'static str,
        n0: usize,
        n1: usize,
    },

    #[error("invalid (F0, F1) pair: {0}")]
    InvalidPair(PairReport),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid experiment config: {}", .0.join("; "))]
    Config(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
