//! Area under ROC curves.
//!
//! The trapezoid area of the polyline ([`auc_of_curve`]) is the canonical value.
//! [`auc_ml_formula`] is the closed-form pairwise sum for the ML curve, which agrees
//! with the geometric area when `0 < lambda_n < 1`; when `lambda_n` is 0 or 1 the
//! ML curve carries a residual atom that the pairwise sum does not see.

use crate::error::{Error, Result};
use crate::roc_core::{validate_pair, DiscreteDistribution, ExtendedRatio, MonotoneCurve, MASS_TOL};

/// Trapezoid-rule area under the polyline; vertical segments add nothing.
pub fn auc_of_curve(curve: &MonotoneCurve) -> f64 {
    curve
        .vertices()
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) * 0.5)
        .sum()
}

/// One pairwise term `max(R_i, R_j) / (2 d_i d_j)`, `d = lambda + (1 - lambda) R`.
///
/// Two infinite ratios give 0; one infinite ratio gives `1 / (2 d_i (1 - lambda))`.
pub fn pair_term(ri: ExtendedRatio, rj: ExtendedRatio, lambda: f64) -> f64 {
    let d = |r: ExtendedRatio| lambda + (1.0 - lambda) * r.value();
    match (ri.is_infinite(), rj.is_infinite()) {
        (true, true) => 0.0,
        (false, true) => 1.0 / (2.0 * d(ri) * (1.0 - lambda)),
        (true, false) => 1.0 / (2.0 * d(rj) * (1.0 - lambda)),
        (false, false) => ri.value().max(rj.value()) / (2.0 * d(ri) * d(rj)),
    }
}

/// `(1/n^2) sum_i sum_j T_ij`.
///
/// Requires `lambda > 0` when some ratio is 0 and `lambda < 1` when some ratio is
/// infinite, so every denominator is positive.
pub fn auc_ml_formula(ratios: &[ExtendedRatio], lambda: f64) -> Result<f64> {
    if ratios.is_empty() {
        return Err(Error::Domain("no ratios".into()));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain(format!("lambda = {lambda} outside [0, 1]")));
    }
    if lambda <= 0.0 && ratios.iter().any(|r| r.is_zero()) {
        return Err(Error::Domain("a zero ratio requires lambda > 0".into()));
    }
    if lambda >= 1.0 && ratios.iter().any(|r| r.is_infinite()) {
        return Err(Error::Domain("an infinite ratio requires lambda < 1".into()));
    }
    let mut total = 0.0;
    for &ri in ratios {
        for &rj in ratios {
            total += pair_term(ri, rj, lambda);
        }
    }
    let n = ratios.len() as f64;
    Ok(total / (n * n))
}

/// AUC of a valid pair from both `E0[max(R, R')] / 2 + F1({inf})` and
/// `1 - E0[min(R, R')] / 2`, after checking that the two agree within `1e-9`.
pub fn true_auc(f0: &DiscreteDistribution, f1: &DiscreteDistribution) -> Result<f64> {
    validate_pair(f0, f1).into_result()?;
    let (mut e_max, mut e_min) = (0.0, 0.0);
    for a in f0.atoms() {
        for b in f0.atoms() {
            let w = a.mass * b.mass;
            e_max += w * a.value.value().max(b.value.value());
            e_min += w * a.value.value().min(b.value.value());
        }
    }
    let via_max = 0.5 * e_max + f1.mass_at_infinity();
    let via_min = 1.0 - 0.5 * e_min;
    if (via_max - via_min).abs() > MASS_TOL {
        return Err(Error::Consistency(format!(
            "AUC identities disagree: {via_max} vs {via_min}"
        )));
    }
    Ok(0.5 * (via_max + via_min))
}
