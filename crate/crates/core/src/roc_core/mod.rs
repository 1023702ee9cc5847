//! Likelihood-ratio laws on `[0, +inf]`, their extended CDFs, and the
//! F0 / F1 / ROC conversion triangle.

mod conversions;
mod curve;
mod distribution;
mod ratio;

pub use conversions::{
    f0_from_f1, f0_from_roc, f1_from_f0, roc_from_pair, validate_pair, PairReport, PairViolation,
};
pub use curve::MonotoneCurve;
pub use distribution::{extended_cdf_eval, Atom, DiscreteDistribution};
pub use ratio::ExtendedRatio;

/// Absolute tolerance for mass sums and atom matching.
pub const MASS_TOL: f64 = 1e-9;
/// Residual masses at or below this are rounding, not atoms.
pub const RESIDUAL_TOL: f64 = 1e-12;
