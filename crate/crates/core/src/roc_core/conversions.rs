//! Conversions between the H0 law, the H1 law and the optimal ROC curve.
//!
//! For a likelihood ratio `R`, `dF1(r) = r dF0(r)` on `(0, inf)`. `F0` may carry
//! an atom at 0 and `F1` an atom at `+inf`; any one of `F0`, `F1`, ROC determines
//! the other two.

use std::collections::BTreeMap;
use std::fmt;

use super::{DiscreteDistribution, ExtendedRatio, MonotoneCurve, MASS_TOL, RESIDUAL_TOL};
use crate::error::{Error, Result};

/// `F1` with atom `(v, v m)` for each finite atom `(v, m)` of `F0`, plus the
/// leftover mass at `+inf`.
pub fn f1_from_f0(f0: &DiscreteDistribution) -> Result<DiscreteDistribution> {
    if f0.mass_at_infinity() > 0.0 {
        return Err(Error::Domain("F0 has an atom at +inf".into()));
    }
    let mean = f0.finite_mean();
    if mean > 1.0 + MASS_TOL {
        return Err(Error::NotH0Law(mean));
    }
    let mut atoms: Vec<(ExtendedRatio, f64)> = f0
        .atoms()
        .iter()
        .filter(|a| !a.value.is_zero())
        .map(|a| (a.value, a.value.value() * a.mass))
        .filter(|&(_, m)| m > 0.0)
        .collect();
    let residual = 1.0 - mean;
    if residual > RESIDUAL_TOL {
        atoms.push((ExtendedRatio::INFINITY, residual));
    }
    DiscreteDistribution::new(atoms)
}

/// `F0` with atom `(v, m / v)` for each finite atom `(v, m)` of `F1`, plus the
/// leftover mass at 0.
pub fn f0_from_f1(f1: &DiscreteDistribution) -> Result<DiscreteDistribution> {
    if f1.mass_at_zero() > 0.0 {
        return Err(Error::Domain("F1 has an atom at 0".into()));
    }
    let finite: Vec<(ExtendedRatio, f64)> = f1
        .atoms()
        .iter()
        .filter(|a| !a.value.is_infinite())
        .map(|a| (a.value, a.mass / a.value.value()))
        .filter(|&(_, m)| m > 0.0)
        .collect();
    let total: f64 = finite.iter().map(|&(_, m)| m).sum();
    if total > 1.0 + MASS_TOL {
        return Err(Error::NotH1Law(total));
    }
    let residual = 1.0 - total;
    let mut atoms = Vec::with_capacity(finite.len() + 1);
    if residual > RESIDUAL_TOL {
        atoms.push((ExtendedRatio::ZERO, residual));
    }
    atoms.extend(finite);
    DiscreteDistribution::new(atoms)
}

/// One way a candidate `(F0, F1)` pair fails to be a likelihood-ratio pair.
#[derive(Debug, Clone, PartialEq)]
pub enum PairViolation {
    MassSum { law: &'static str, total: f64 },
    F1AtomAtZero(f64),
    F0AtomAtInfinity(f64),
    Ratio { value: f64, f0_mass: f64, f1_mass: f64 },
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MassSum { law, total } => write!(f, "{law} masses sum to {total}"),
            Self::F1AtomAtZero(m) => write!(f, "F1 has mass {m} at 0"),
            Self::F0AtomAtInfinity(m) => write!(f, "F0 has mass {m} at inf"),
            Self::Ratio {
                value,
                f0_mass,
                f1_mass,
            } => write!(
                f,
                "at v = {value}: F1 mass {f1_mass} != v * F0 mass {}",
                value * f0_mass
            ),
        }
    }
}

/// Result of [`validate_pair`]; passes iff no violations were recorded.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairReport {
    pub violations: Vec<PairViolation>,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::InvalidPair(self))
        }
    }
}

impl fmt::Display for PairReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that `F1` is the pushforward of `F0` under `dF1 = r dF0`.
pub fn validate_pair(f0: &DiscreteDistribution, f1: &DiscreteDistribution) -> PairReport {
    let mut violations = Vec::new();
    for (law, d) in [("F0", f0), ("F1", f1)] {
        let total = d.total_mass();
        if (total - 1.0).abs() > MASS_TOL {
            violations.push(PairViolation::MassSum { law, total });
        }
    }
    let z = f1.mass_at_zero();
    if z > 0.0 {
        violations.push(PairViolation::F1AtomAtZero(z));
    }
    let inf = f0.mass_at_infinity();
    if inf > 0.0 {
        violations.push(PairViolation::F0AtomAtInfinity(inf));
    }
    let support = f0
        .finite_support()
        .chain(f1.finite_support())
        .filter(|v| !v.is_zero())
        .collect::<std::collections::BTreeSet<_>>();
    for v in support {
        let (m0, m1) = (f0.mass_at(v), f1.mass_at(v));
        if (m1 - v.value() * m0).abs() > MASS_TOL {
            violations.push(PairViolation::Ratio {
                value: v.value(),
                f0_mass: m0,
                f1_mass: m1,
            });
        }
    }
    PairReport { violations }
}

/// The optimal ROC curve of a valid pair: starts at `(0, F1({inf}))`, then one
/// vertex per finite support value in decreasing threshold order, ending at `(1, 1)`.
pub fn roc_from_pair(f0: &DiscreteDistribution, f1: &DiscreteDistribution) -> Result<MonotoneCurve> {
    validate_pair(f0, f1).into_result()?;
    let mut steps: BTreeMap<ExtendedRatio, (f64, f64)> = BTreeMap::new();
    for a in f0.atoms() {
        steps.entry(a.value).or_default().0 += a.mass;
    }
    for a in f1.atoms().iter().filter(|a| !a.value.is_infinite()) {
        steps.entry(a.value).or_default().1 += a.mass;
    }
    let (mut p, mut q) = (0.0, f1.mass_at_infinity());
    let mut vertices = Vec::with_capacity(steps.len() + 1);
    vertices.push((p, q));
    for (_, &(dp, dq)) in steps.iter().rev() {
        p += dp;
        q += dq;
        vertices.push((p, q));
    }
    let last = vertices.len() - 1;
    vertices[last] = (1.0, 1.0);
    MonotoneCurve::new(vertices)
}

/// Recovers `F0` from a concave curve: each maximal linear piece of slope `s` and
/// width `w` becomes an atom `(s, w)`. A vertical piece at `p = 0` is `F1` mass at
/// `+inf` and yields no atom. Pieces whose slopes differ by less than `1e-9` merge.
pub fn f0_from_roc(curve: &MonotoneCurve) -> Result<DiscreteDistribution> {
    let v = curve.vertices();
    let last_q = v[v.len() - 1].1;
    if (last_q - 1.0).abs() > MASS_TOL {
        return Err(Error::NotOptimalRoc(format!(
            "curve ends at (1, {last_q}) instead of (1, 1)"
        )));
    }
    // (width, rise) per merged piece
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    let mut prev_slope = f64::INFINITY;
    for (i, w) in v.windows(2).enumerate() {
        let (dp, dq) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if dp <= 0.0 {
            if w[0].0 == 0.0 {
                continue;
            }
            return Err(Error::NotOptimalRoc(format!(
                "vertical segment {i} at p = {}",
                w[0].0
            )));
        }
        let slope = dq / dp;
        if slope > prev_slope + MASS_TOL {
            return Err(Error::NotOptimalRoc(format!(
                "slope increases at segment {i} ({prev_slope} -> {slope})"
            )));
        }
        match pieces.last_mut() {
            Some((pw, pr)) if (slope - *pr / *pw).abs() < MASS_TOL => {
                *pw += dp;
                *pr += dq;
            }
            _ => pieces.push((dp, dq)),
        }
        prev_slope = slope;
    }
    let atoms = pieces
        .into_iter()
        .map(|(w, r)| Ok((ExtendedRatio::new((r / w).max(0.0))?, w)))
        .collect::<Result<Vec<_>>>()?;
    DiscreteDistribution::from_weights(atoms)
}
