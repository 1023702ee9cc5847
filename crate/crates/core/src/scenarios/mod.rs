//! Test problems and the seeded Monte Carlo harness.
//!
//! The binormal problem draws `X ~ N(0, 1)` under H0 and `X ~ N(1, 1)` under H1;
//! its likelihood ratio is `R = exp(X - 1/2)` and its ROC curve is
//! `Phi(1 + Phi^-1(p))`.

mod experiment;
mod normal;

use rand::{Rng, RngCore};

pub use experiment::{
    default_config_set, replication_rng, run_experiment, run_experiment_on, EstimatorSummary,
    ExperimentConfig, ExperimentReport, TRUE_ROC_GRID,
};
pub use normal::{normal_cdf, normal_quantile};

use crate::error::Result;
use crate::estimators::{Hypothesis, LabeledSample};
use crate::roc_core::{f1_from_f0, roc_from_pair, DiscreteDistribution, ExtendedRatio, MonotoneCurve};

/// Uniform draw from the open interval `(0, 1)` using the top 52 bits.
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

/// The binormal likelihood ratio `exp(x - 1/2)` of an observation `x`.
pub fn binormal_ratio(x: f64) -> ExtendedRatio {
    ExtendedRatio::new((x - 0.5).exp()).expect("exp is nonnegative")
}

/// Draws one binormal likelihood ratio under `label` by inverse-CDF sampling.
pub fn binormal_sample<R: RngCore + ?Sized>(label: Hypothesis, rng: &mut R) -> ExtendedRatio {
    let mean = match label {
        Hypothesis::H0 => 0.0,
        Hypothesis::H1 => 1.0,
    };
    let z = normal_quantile(open_unit(rng)).expect("open_unit never returns 0 or 1");
    binormal_ratio(mean + z)
}

/// `ROC(p) = 1 - Phi(Phi^-1(1 - p) - 1)`, evaluated as `Phi(1 + Phi^-1(p))`.
pub fn binormal_roc_value(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else if p >= 1.0 {
        1.0
    } else {
        normal_cdf(1.0 + normal_quantile(p).expect("p inside (0, 1)"))
    }
}

/// The binormal ROC sampled on `m` evenly spaced values of `p`.
///
/// # Panics
/// If `m < 2`.
pub fn binormal_true_roc(m: usize) -> MonotoneCurve {
    assert!(m >= 2, "grid needs at least two points");
    let step = 1.0 / (m - 1) as f64;
    let vertices = (0..m)
        .map(|k| {
            let p = if k == m - 1 { 1.0 } else { k as f64 * step };
            (p, binormal_roc_value(p))
        })
        .collect();
    MonotoneCurve::new(vertices).expect("binormal ROC is monotone")
}

/// Draws from a discrete law by inverting its CDF.
pub fn sample_discrete<R: RngCore + ?Sized>(dist: &DiscreteDistribution, rng: &mut R) -> ExtendedRatio {
    let u = open_unit(rng);
    let mut acc = 0.0;
    for a in dist.atoms() {
        acc += a.mass;
        if u <= acc {
            return a.value;
        }
    }
    dist.atoms()[dist.len() - 1].value
}

/// A random valid `(F0, F1)` pair with between 1 and `max_support` atoms in `F0`.
///
/// Support values are drawn on `(0.05, 5)`, occasionally with an extra atom at 0,
/// then rescaled so that `E0[R]` is 1 or a random value in `[0.3, 1)`; `F1`
/// follows from `dF1 = r dF0`.
pub fn random_discrete_bht<R: Rng + ?Sized>(
    rng: &mut R,
    max_support: usize,
) -> (DiscreteDistribution, DiscreteDistribution) {
    let max_support = max_support.max(1);
    let k = rng.random_range(1..=max_support);
    let with_zero = k > 1 && rng.random_bool(0.25);
    let mut values: Vec<f64> = (0..k - usize::from(with_zero))
        .map(|_| rng.random_range(0.05..5.0))
        .collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let mut weights: Vec<f64> = (0..values.len()).map(|_| rng.random_range(0.1..1.0)).collect();
    let zero_weight = with_zero.then(|| rng.random_range(0.1..1.0));
    let total: f64 = weights.iter().sum::<f64>() + zero_weight.unwrap_or(0.0);
    weights.iter_mut().for_each(|w| *w /= total);

    let mean: f64 = values.iter().zip(&weights).map(|(v, w)| v * w).sum();
    let target = if rng.random_bool(1.0 / 3.0) {
        1.0
    } else {
        rng.random_range(0.3..1.0)
    };
    let scale = target / mean;

    let mut atoms = Vec::with_capacity(values.len() + 1);
    if let Some(z) = zero_weight {
        atoms.push((ExtendedRatio::ZERO, z / total));
    }
    for (v, w) in values.iter().zip(&weights) {
        atoms.push((ExtendedRatio::new(v * scale).expect("positive"), *w));
    }
    let f0 = DiscreteDistribution::from_weights(atoms).expect("normalized weights");
    let f1 = f1_from_f0(&f0).expect("mean scaled to at most 1");
    (f0, f1)
}

/// A test problem that can generate labeled ratio samples and knows its ROC.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Binormal,
    Discrete {
        f0: DiscreteDistribution,
        f1: DiscreteDistribution,
    },
}

impl Scenario {
    pub fn discrete(f0: DiscreteDistribution) -> Result<Self> {
        let f1 = f1_from_f0(&f0)?;
        Ok(Self::Discrete { f0, f1 })
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::Binormal => "binormal",
            Self::Discrete { .. } => "discrete",
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, label: Hypothesis, rng: &mut R) -> ExtendedRatio {
        match self {
            Self::Binormal => binormal_sample(label, rng),
            Self::Discrete { f0, f1 } => match label {
                Hypothesis::H0 => sample_discrete(f0, rng),
                Hypothesis::H1 => sample_discrete(f1, rng),
            },
        }
    }

    /// The exact ROC for discrete problems, a `TRUE_ROC_GRID`-point sampling of
    /// the binormal one.
    pub fn true_roc(&self) -> MonotoneCurve {
        match self {
            Self::Binormal => binormal_true_roc(TRUE_ROC_GRID),
            Self::Discrete { f0, f1 } => roc_from_pair(f0, f1).expect("valid by construction"),
        }
    }
}

/// `n0` samples labeled H0 followed by `n1` labeled H1.
pub fn mixture_sample_set<R: RngCore + ?Sized>(
    scenario: &Scenario,
    n0: usize,
    n1: usize,
    rng: &mut R,
) -> Vec<LabeledSample> {
    let labels = std::iter::repeat_n(Hypothesis::H0, n0).chain(std::iter::repeat_n(Hypothesis::H1, n1));
    labels
        .map(|label| LabeledSample {
            label,
            ratio: scenario.sample(label, rng),
        })
        .collect()
}
