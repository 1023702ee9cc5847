//! Estimation of optimal ROC curves from independent likelihood-ratio samples.
//!
//! Three estimators are provided: the empirical staircase built from the two
//! labeled sample groups, its least concave majorant, and the maximum-likelihood
//! estimator, which pools all samples regardless of label. Curves are compared in
//! the Lévy metric; [`scenarios`] contains a seeded Monte Carlo harness for the
//! binormal test problem.

pub mod auc;
pub mod cli;
pub mod error;
pub mod estimators;
pub mod io;
pub mod metrics;
pub mod roc_core;
pub mod scenarios;

pub use error::{Error, Result};
pub use roc_core::{DiscreteDistribution, ExtendedRatio, MonotoneCurve};
