use std::collections::BTreeMap;

use super::{Hypothesis, LabeledSample};
use crate::error::{Error, Result};
use crate::roc_core::{DiscreteDistribution, ExtendedRatio, MonotoneCurve};

fn counts_by_value(samples: &[LabeledSample]) -> (BTreeMap<ExtendedRatio, (usize, usize)>, usize, usize) {
    let mut counts: BTreeMap<ExtendedRatio, (usize, usize)> = BTreeMap::new();
    let (mut n0, mut n1) = (0, 0);
    for s in samples {
        let e = counts.entry(s.ratio).or_default();
        match s.label {
            Hypothesis::H0 => {
                e.0 += 1;
                n0 += 1;
            }
            Hypothesis::H1 => {
                e.1 += 1;
                n1 += 1;
            }
        }
    }
    (counts, n0, n1)
}

fn require_both(estimator: &'static str, n0: usize, n1: usize) -> Result<()> {
    if n0 == 0 || n1 == 0 {
        Err(Error::OneSided { estimator, n0, n1 })
    } else {
        Ok(())
    }
}

/// Separate empirical laws of the label-0 and label-1 ratios.
pub fn empirical_cdfs(
    samples: &[LabeledSample],
) -> Result<(DiscreteDistribution, DiscreteDistribution)> {
    let (counts, n0, n1) = counts_by_value(samples);
    require_both("E", n0, n1)?;
    let law = |pick: fn(&(usize, usize)) -> usize, n: usize| {
        DiscreteDistribution::new(
            counts
                .iter()
                .filter(|(_, c)| pick(c) > 0)
                .map(|(&v, c)| (v, pick(c) as f64 / n as f64))
                .collect(),
        )
    };
    Ok((law(|c| c.0, n0)?, law(|c| c.1, n1)?))
}

/// The empirical ROC staircase, swept from the largest threshold down.
///
/// Values held only by label-0 samples step right, only by label-1 samples step
/// up, and ties step diagonally. Only the ranks of the ratios matter.
pub fn empirical_roc(samples: &[LabeledSample]) -> Result<MonotoneCurve> {
    let (counts, n0, n1) = counts_by_value(samples);
    require_both("E", n0, n1)?;
    let (mut c0, mut c1) = (0usize, 0usize);
    let mut vertices = Vec::with_capacity(counts.len() + 1);
    vertices.push((0.0, 0.0));
    for &(d0, d1) in counts.values().rev() {
        c0 += d0;
        c1 += d1;
        vertices.push((c0 as f64 / n0 as f64, c1 as f64 / n1 as f64));
    }
    MonotoneCurve::new(vertices)
}

/// Least concave majorant of a monotone curve: the upper boundary of the convex
/// hull of the region under it.
pub fn concavify(curve: &MonotoneCurve) -> MonotoneCurve {
    // top of each vertical run; vertices are sorted by p, then q
    let mut tops: Vec<(f64, f64)> = Vec::with_capacity(curve.len());
    for &(p, q) in curve.vertices() {
        match tops.last_mut() {
            Some(last) if last.0 == p => last.1 = q,
            _ => tops.push((p, q)),
        }
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(tops.len());
    for pt in tops {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    MonotoneCurve::new(hull).expect("hull of a monotone curve is monotone")
}

/// Empirical estimator followed by [`concavify`].
pub fn concavified_roc(samples: &[LabeledSample]) -> Result<MonotoneCurve> {
    let (_, n0, n1) = counts_by_value(samples);
    require_both("CE", n0, n1)?;
    empirical_roc(samples).map(|c| concavify(&c))
}
