//! The empirical, concavified-empirical and maximum-likelihood ROC estimators.

mod empirical;
mod ml;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use empirical::{concavified_roc, concavify, empirical_cdfs, empirical_roc};
pub use ml::{
    log_likelihood, ml_fit, ml_fit_ratios, phi_n, solve_lambda, MlFit, LAMBDA_TOL,
};

use crate::error::{Error, Result};
use crate::roc_core::{ExtendedRatio, MonotoneCurve};

/// Which hypothesis generated a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    H0,
    H1,
}

impl Hypothesis {
    pub fn index(self) -> u8 {
        match self {
            Self::H0 => 0,
            Self::H1 => 1,
        }
    }
}

impl TryFrom<u8> for Hypothesis {
    type Error = Error;

    fn try_from(label: u8) -> Result<Self> {
        match label {
            0 => Ok(Self::H0),
            1 => Ok(Self::H1),
            other => Err(Error::Domain(format!("label must be 0 or 1, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledSample {
    pub label: Hypothesis,
    pub ratio: ExtendedRatio,
}

impl LabeledSample {
    pub fn new(label: Hypothesis, ratio: f64) -> Result<Self> {
        Ok(Self {
            label,
            ratio: ExtendedRatio::new(ratio)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Estimator {
    #[serde(rename = "E")]
    Empirical,
    #[serde(rename = "CE")]
    ConcavifiedEmpirical,
    #[serde(rename = "ML")]
    MaximumLikelihood,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [
        Self::Empirical,
        Self::ConcavifiedEmpirical,
        Self::MaximumLikelihood,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Self::Empirical => "E",
            Self::ConcavifiedEmpirical => "CE",
            Self::MaximumLikelihood => "ML",
        }
    }

    /// Whether the estimator needs samples under both hypotheses.
    pub fn needs_both_labels(self) -> bool {
        !matches!(self, Self::MaximumLikelihood)
    }

    pub fn fit_curve(self, samples: &[LabeledSample]) -> Result<MonotoneCurve> {
        match self {
            Self::Empirical => empirical_roc(samples),
            Self::ConcavifiedEmpirical => concavified_roc(samples),
            Self::MaximumLikelihood => ml_fit(samples).map(|f| f.curve),
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E" => Ok(Self::Empirical),
            "CE" => Ok(Self::ConcavifiedEmpirical),
            "ML" | "MLE" => Ok(Self::MaximumLikelihood),
            _ => Err(Error::Domain(format!(
                "unknown estimator {s:?} (expected E, CE or ML)"
            ))),
        }
    }
}
