use std::collections::BTreeMap;

use super::{Hypothesis, LabeledSample};
use crate::auc::auc_of_curve;
use crate::error::{Error, Result};
use crate::roc_core::{
    roc_from_pair, DiscreteDistribution, ExtendedRatio, MonotoneCurve, RESIDUAL_TOL,
};

/// Bracket width at which the mixing-weight bisection stops.
pub const LAMBDA_TOL: f64 = 1e-12;

/// `1 / (lambda + (1 - lambda) r)` with `r = inf` giving 0 and a zero denominator
/// giving `+inf`. Valid for `lambda` in `[0, 1]`; at `lambda = 1` this is the left
/// limit of the weight.
fn h0_weight(r: ExtendedRatio, lambda: f64) -> f64 {
    if r.is_infinite() {
        return 0.0;
    }
    let d = lambda + (1.0 - lambda) * r.value();
    if d == 0.0 {
        f64::INFINITY
    } else {
        1.0 / d
    }
}

/// Average of `h0_weight` over the samples, continuous on `[0, 1]`.
fn phi_left(ratios: &[ExtendedRatio], lambda: f64) -> f64 {
    ratios.iter().map(|&r| h0_weight(r, lambda)).sum::<f64>() / ratios.len() as f64
}

/// `phi_n(lambda) = (1/n) sum 1 / (lambda + (1 - lambda) R_i)` for `lambda < 1`,
/// and exactly 1 at `lambda = 1`.
///
/// Convex on `[0, 1]`; `+inf` at 0 iff some ratio is 0, and discontinuous at 1 iff
/// some ratio is `+inf`.
///
/// # Panics
/// If `ratios` is empty.
pub fn phi_n(ratios: &[ExtendedRatio], lambda: f64) -> f64 {
    assert!(!ratios.is_empty(), "phi_n needs at least one ratio");
    if lambda >= 1.0 {
        1.0
    } else {
        phi_left(ratios, lambda)
    }
}

/// `lambda_n = min { lambda in [0, 1] : phi_n(lambda) <= 1 }`.
///
/// Returns 0 when `phi_n(0) <= 1`, 1 when every ratio is finite with mean at most
/// 1, and otherwise bisects the convex `phi_n` for its crossing of 1. The returned
/// value always satisfies `phi_n(lambda_n) <= 1`.
///
/// # Panics
/// If `ratios` is empty.
pub fn solve_lambda(ratios: &[ExtendedRatio]) -> f64 {
    if phi_n(ratios, 0.0) <= 1.0 {
        return 0.0;
    }
    let has_inf = ratios.iter().any(|r| r.is_infinite());
    if !has_inf {
        let mean = ratios.iter().map(|r| r.value()).sum::<f64>() / ratios.len() as f64;
        if mean <= 1.0 {
            return 1.0;
        }
    }
    // {phi <= 1} is an interval [lambda_n, 1] and phi_left(1) <= 1
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo >= LAMBDA_TOL {
        let mid = 0.5 * (lo + hi);
        let v = phi_left(ratios, mid);
        if v <= 1.0 {
            hi = mid;
            if 1.0 - v < LAMBDA_TOL {
                break;
            }
        } else {
            lo = mid;
        }
    }
    hi
}

/// The maximum-likelihood fit.
#[derive(Debug, Clone, PartialEq)]
pub struct MlFit {
    /// Number of samples the fit was computed from.
    pub n: usize,
    pub lambda_n: f64,
    pub f0_hat: DiscreteDistribution,
    pub f1_hat: DiscreteDistribution,
    pub curve: MonotoneCurve,
    /// Geometric area under `curve`.
    pub auc: f64,
}

impl MlFit {
    /// Lagrange multipliers of the two mass constraints: `(n lambda_n, n (1 - lambda_n))`.
    pub fn kkt_duals(&self) -> (f64, f64) {
        let n = self.n as f64;
        (n * self.lambda_n, n * (1.0 - self.lambda_n))
    }
}

/// ML estimate from labeled samples. Labels are ignored.
pub fn ml_fit(samples: &[LabeledSample]) -> Result<MlFit> {
    let ratios: Vec<ExtendedRatio> = samples.iter().map(|s| s.ratio).collect();
    ml_fit_ratios(&ratios)
}

/// ML estimate from bare ratios.
///
/// Each sample carries H0 weight `(1/n) / (lambda_n + (1 - lambda_n) R_i)` and H1
/// weight `R_i` times that. When `lambda_n` is 0 or 1 a leftover mass above
/// `RESIDUAL_TOL` becomes an atom at 0 (H0) or `+inf` (H1). Any other leftover is
/// rounding or bisection error and the weights are rescaled to unit mass.
pub fn ml_fit_ratios(ratios: &[ExtendedRatio]) -> Result<MlFit> {
    if ratios.is_empty() {
        return Err(Error::Domain("ML estimator needs at least one sample".into()));
    }
    let n = ratios.len() as f64;
    let lambda = solve_lambda(ratios);

    let mut counts: BTreeMap<ExtendedRatio, usize> = BTreeMap::new();
    for &r in ratios {
        *counts.entry(r).or_insert(0) += 1;
    }
    let mut w0: BTreeMap<ExtendedRatio, f64> = BTreeMap::new();
    let mut w1: BTreeMap<ExtendedRatio, f64> = BTreeMap::new();
    for (&r, &c) in &counts {
        let c = c as f64;
        let (m0, m1) = if r.is_infinite() {
            (0.0, c / (n * (1.0 - lambda)))
        } else if r.is_zero() {
            (c / (n * lambda), 0.0)
        } else {
            let d = n * (lambda + (1.0 - lambda) * r.value());
            (c / d, c * r.value() / d)
        };
        if m0 > 0.0 {
            w0.insert(r, m0);
        }
        if m1 > 0.0 {
            w1.insert(r, m1);
        }
    }

    let interior = lambda > 0.0 && lambda < 1.0;
    let f0_hat = finish(w0, ExtendedRatio::ZERO, interior)?;
    let f1_hat = finish(w1, ExtendedRatio::INFINITY, interior)?;
    let curve = roc_from_pair(&f0_hat, &f1_hat)?;
    let auc = auc_of_curve(&curve);
    Ok(MlFit {
        n: ratios.len(),
        lambda_n: lambda,
        f0_hat,
        f1_hat,
        curve,
        auc,
    })
}

fn finish(
    mut weights: BTreeMap<ExtendedRatio, f64>,
    residual_at: ExtendedRatio,
    normalize: bool,
) -> Result<DiscreteDistribution> {
    let total: f64 = weights.values().sum();
    if !normalize && 1.0 - total > RESIDUAL_TOL {
        *weights.entry(residual_at).or_insert(0.0) += 1.0 - total;
    } else {
        for m in weights.values_mut() {
            *m /= total;
        }
    }
    DiscreteDistribution::new(weights.into_iter().collect())
}

/// Log-probability of the samples when label-0 ratios follow `f0` and label-1
/// ratios follow `f1`. Unsupported values contribute `-inf`.
pub fn log_likelihood(
    samples: &[LabeledSample],
    f0: &DiscreteDistribution,
    f1: &DiscreteDistribution,
) -> f64 {
    samples
        .iter()
        .map(|s| {
            let law = match s.label {
                Hypothesis::H0 => f0,
                Hypothesis::H1 => f1,
            };
            law.mass_at(s.ratio).ln()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    fn rs(v: &[f64]) -> Vec<ExtendedRatio> {
        v.iter().map(|&x| ExtendedRatio::new(x).unwrap()).collect()
    }

    fn dist(atoms: &[(f64, f64)]) -> DiscreteDistribution {
        DiscreteDistribution::new(
            atoms
                .iter()
                .map(|&(v, m)| (ExtendedRatio::new(v).unwrap(), m))
                .collect(),
        )
        .unwrap()
    }

    fn assert_dist(d: &DiscreteDistribution, expected: &[(f64, f64)], tol: f64) {
        assert_eq!(d.len(), expected.len(), "{d:?}");
        for (a, &(v, m)) in d.atoms().iter().zip(expected) {
            assert!(a.value.value() == v || (a.value.value() - v).abs() < tol, "{d:?}");
            assert!((a.mass - m).abs() < tol, "{d:?} vs {expected:?}");
        }
    }

    #[test]
    fn phi_examples() {
        for lambda in [0.0, 0.3, 0.99, 1.0] {
            assert_eq!(phi_n(&rs(&[1.0, 1.0, 1.0]), lambda), 1.0);
        }
        assert!((phi_n(&rs(&[0.5, 2.0]), 0.5) - 1.0).abs() < 1e-15);
        assert_eq!(phi_n(&rs(&[0.0, 2.0]), 0.0), INF);
        assert_eq!(phi_n(&rs(&[0.0, INF]), 1.0), 1.0);
        assert_eq!(phi_n(&rs(&[2.0, INF]), 0.0), 0.25);
    }

    #[test]
    fn solve_lambda_examples() {
        assert_eq!(solve_lambda(&rs(&[0.5, 0.5])), 1.0);
        assert_eq!(solve_lambda(&rs(&[3.0, 3.0])), 0.0);
        // root of 2 l^2 - 3 l + 1 = 0 inside (0, 1)
        assert!((solve_lambda(&rs(&[0.5, 2.0])) - 0.5).abs() < 1e-12);
        assert_eq!(solve_lambda(&rs(&[1.0, 1.0])), 0.0);
    }

    #[test]
    fn solve_lambda_with_extreme_ratios() {
        // phi = (1/2)(1/l) -> l = 1/2
        assert!((solve_lambda(&rs(&[0.0, INF])) - 0.5).abs() < 1e-12);
        assert_eq!(solve_lambda(&rs(&[INF, INF])), 0.0);
        assert_eq!(solve_lambda(&rs(&[0.0, 0.0])), 1.0);
        // {0.25, inf}: (1/2) / (l + (1 - l)/4) = 1 -> l = 1/3
        assert!((solve_lambda(&rs(&[0.25, INF])) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ml_fit_examples() {
        let fit = ml_fit_ratios(&rs(&[0.5, 2.0])).unwrap();
        assert!((fit.lambda_n - 0.5).abs() < 1e-12);
        assert_dist(&fit.f0_hat, &[(0.5, 2.0 / 3.0), (2.0, 1.0 / 3.0)], 1e-9);
        assert_dist(&fit.f1_hat, &[(0.5, 1.0 / 3.0), (2.0, 2.0 / 3.0)], 1e-9);
        assert!((fit.auc - 2.0 / 3.0).abs() < 1e-9);

        let fit = ml_fit_ratios(&rs(&[0.5, 0.5])).unwrap();
        assert_eq!(fit.lambda_n, 1.0);
        assert_dist(&fit.f0_hat, &[(0.5, 1.0)], 1e-12);
        assert_dist(&fit.f1_hat, &[(0.5, 0.5), (INF, 0.5)], 1e-12);
        assert!((fit.auc - 0.75).abs() < 1e-12);

        let fit = ml_fit_ratios(&rs(&[0.25, INF])).unwrap();
        assert!((fit.lambda_n - 1.0 / 3.0).abs() < 1e-12);
        assert_dist(&fit.f0_hat, &[(0.25, 1.0)], 1e-9);
        assert_dist(&fit.f1_hat, &[(0.25, 0.25), (INF, 0.75)], 1e-9);
    }

    #[test]
    fn ml_fit_case_two_puts_residual_at_zero() {
        let fit = ml_fit_ratios(&rs(&[3.0, 3.0])).unwrap();
        assert_eq!(fit.lambda_n, 0.0);
        assert_dist(&fit.f0_hat, &[(0.0, 2.0 / 3.0), (3.0, 1.0 / 3.0)], 1e-12);
        assert_dist(&fit.f1_hat, &[(3.0, 1.0)], 1e-12);
    }

    #[test]
    fn ml_fit_degenerate_inputs() {
        let fit = ml_fit_ratios(&rs(&[1.0; 4])).unwrap();
        assert_eq!(fit.lambda_n, 0.0);
        assert_eq!(fit.f0_hat, DiscreteDistribution::point_mass(ExtendedRatio::ONE));
        assert_eq!(fit.f1_hat, fit.f0_hat);
        assert_eq!(fit.auc, 0.5);

        let fit = ml_fit_ratios(&rs(&[0.0, INF, INF])).unwrap();
        assert_dist(&fit.f0_hat, &[(0.0, 1.0)], 1e-9);
        assert_dist(&fit.f1_hat, &[(INF, 1.0)], 1e-9);
        assert!((fit.auc - 1.0).abs() < 1e-12);

        assert!(matches!(ml_fit_ratios(&[]), Err(Error::Domain(_))));
    }

    #[test]
    fn kkt_duals_sum_to_n() {
        let fit = ml_fit_ratios(&rs(&[0.5, 2.0, 4.0])).unwrap();
        let (lam, mu) = fit.kkt_duals();
        assert!((lam + mu - 3.0).abs() < 1e-12);
        assert!((lam - 3.0 * fit.lambda_n).abs() < 1e-12);
    }

    #[test]
    fn log_likelihood_examples() {
        let one = dist(&[(1.0, 1.0)]);
        let s = [LabeledSample::new(Hypothesis::H0, 1.0).unwrap()];
        assert_eq!(log_likelihood(&s, &one, &one), 0.0);

        let f0 = dist(&[(0.5, 2.0 / 3.0), (2.0, 1.0 / 3.0)]);
        let f1 = dist(&[(0.5, 1.0 / 3.0), (2.0, 2.0 / 3.0)]);
        let s = [
            LabeledSample::new(Hypothesis::H0, 0.5).unwrap(),
            LabeledSample::new(Hypothesis::H1, 2.0).unwrap(),
        ];
        assert!((log_likelihood(&s, &f0, &f1) - 2.0 * (2.0f64 / 3.0).ln()).abs() < 1e-12);
        assert!((log_likelihood(&s, &f0, &f1) + 0.81093).abs() < 1e-5);

        let s = [LabeledSample::new(Hypothesis::H0, 3.0).unwrap()];
        assert_eq!(log_likelihood(&s, &one, &one), f64::NEG_INFINITY);
    }
}
