//! Distances between monotone curves and the finite-sample bound for the
//! empirical estimator.
//!
//! The Lévy distance `L(A, B)` is the least `eps` such that
//! `A(p - eps) - eps <= B(p) <= A(p + eps) + eps` for all real `p`, with curves
//! extended by 0 left of the unit interval and by 1 right of it. It depends only
//! on the completed graphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::roc_core::{DiscreteDistribution, ExtendedRatio, MonotoneCurve};

/// Slack on a band inequality before it counts as violated.
pub const BAND_SLACK: f64 = 1e-12;
/// Final bracket width of the Lévy bisection.
pub const LEVY_TOL: f64 = 1e-10;

/// Outcome of testing whether one curve lies in the `eps`-band of another.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyBandCheck {
    pub epsilon: f64,
    pub feasible: bool,
    /// A point `(p, q)` on the tested curve that leaves the band by more than
    /// [`BAND_SLACK`].
    pub witness: Option<(f64, f64)>,
}

/// Tests whether the completed graph of `b` lies between `a` shifted by
/// `(-eps, +eps)` and `a` shifted by `(+eps, -eps)`.
///
/// Both gap functions are piecewise linear between the vertices of `b` and the
/// `eps`-shifted vertices of `a`, so checking the one-sided limits at those
/// abscissae is exact.
pub fn levy_band_check(a: &MonotoneCurve, b: &MonotoneCurve, eps: f64) -> LevyBandCheck {
    let witness = band_violation(a, b, eps);
    LevyBandCheck {
        epsilon: eps,
        feasible: witness.is_none(),
        witness,
    }
}

fn band_violation(a: &MonotoneCurve, b: &MonotoneCurve, eps: f64) -> Option<(f64, f64)> {
    let in_unit = |x: f64| (0.0..=1.0).contains(&x);

    // B(x) <= A(y) + eps with y = x + eps
    let upper = |x: f64, y: f64| -> Option<(f64, f64)> {
        let hi = b.right_value(x);
        if hi - (a.right_value(y) + eps) > BAND_SLACK {
            return Some((x, hi));
        }
        let lo = b.left_value(x);
        if lo - (a.left_value(y) + eps) > BAND_SLACK {
            return Some((x, lo));
        }
        None
    };
    // A(y) - eps <= B(x) with y = x - eps
    let lower = |x: f64, y: f64| -> Option<(f64, f64)> {
        let lo = b.left_value(x);
        if a.left_value(y) - eps - lo > BAND_SLACK {
            return Some((x, lo));
        }
        let hi = b.right_value(x);
        if a.right_value(y) - eps - hi > BAND_SLACK {
            return Some((x, hi));
        }
        None
    };

    for &(x, _) in b.vertices() {
        if let Some(w) = upper(x, x + eps).or_else(|| lower(x, x - eps)) {
            return Some(w);
        }
    }
    for &(y, _) in a.vertices() {
        let x = y - eps;
        if in_unit(x) {
            if let Some(w) = upper(x, y) {
                return Some(w);
            }
        }
        let x = y + eps;
        if in_unit(x) {
            if let Some(w) = lower(x, y) {
                return Some(w);
            }
        }
    }
    None
}

/// Lévy distance by bisection on `eps` over `[0, 1]`, accurate to `1e-10`.
///
/// Feasibility requires each curve to lie in the band of the other, which makes
/// the result exactly symmetric in its arguments.
pub fn levy_distance(a: &MonotoneCurve, b: &MonotoneCurve) -> f64 {
    let feasible =
        |eps: f64| band_violation(a, b, eps).is_none() && band_violation(b, a, eps).is_none();
    if feasible(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > LEVY_TOL {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Curve value on `[0, 1]` with a jump read as its upper end.
fn upper_on_unit(c: &MonotoneCurve, p: f64) -> f64 {
    if p >= 1.0 {
        c.vertices()[c.len() - 1].1
    } else {
        c.right_value(p)
    }
}

/// `sup_{p in [0,1]} |A(p) - B(p)|`, taking the upper value at jumps.
pub fn uniform_distance(a: &MonotoneCurve, b: &MonotoneCurve) -> f64 {
    let xs: BTreeSet<u64> = a
        .vertices()
        .iter()
        .chain(b.vertices())
        .map(|&(p, _)| p.to_bits())
        .collect();
    let mut sup = 0.0f64;
    for x in xs.into_iter().map(f64::from_bits) {
        sup = sup.max((upper_on_unit(a, x) - upper_on_unit(b, x)).abs());
        if x > 0.0 {
            sup = sup.max((a.left_value(x) - b.left_value(x)).abs());
        }
    }
    sup
}

/// `sup_{tau in [0, inf)} max(|Fa0(tau) - Fb0(tau)|, |Fa1(tau) - Fb1(tau)|)`,
/// an upper bound on the Lévy distance between the two induced ROC curves.
pub fn lemma1_bound(
    fa0: &DiscreteDistribution,
    fa1: &DiscreteDistribution,
    fb0: &DiscreteDistribution,
    fb1: &DiscreteDistribution,
) -> f64 {
    let points: BTreeSet<ExtendedRatio> = [fa0, fa1, fb0, fb1]
        .iter()
        .flat_map(|d| d.finite_support())
        .collect();
    let mut sup = 0.0f64;
    for tau in points {
        let gap0 = (fa0.cdf(tau) - fb0.cdf(tau))
            .abs()
            .max((fa0.cdf_left(tau) - fb0.cdf_left(tau)).abs());
        let gap1 = (fa1.cdf(tau) - fb1.cdf(tau))
            .abs()
            .max((fa1.cdf_left(tau) - fb1.cdf_left(tau)).abs());
        sup = sup.max(gap0).max(gap1);
    }
    sup
}

/// `2 exp(-2 n0 delta^2) + 2 exp(-2 n1 delta^2)`, bounding
/// `P{L(ROC, ROC_E) >= delta}`. Not clamped to 1.
pub fn dkw_roc_bound(n0: usize, n1: usize, delta: f64) -> Result<f64> {
    if n0 == 0 || n1 == 0 {
        return Err(Error::Domain("n0 and n1 must be at least 1".into()));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    let tail = |n: usize| 2.0 * (-2.0 * n as f64 * delta * delta).exp();
    Ok(tail(n0) + tail(n1))
}
