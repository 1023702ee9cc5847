use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExtendedRatio, MASS_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub value: ExtendedRatio,
    pub mass: f64,
}

/// A finitely supported probability law on `[0, +inf]`.
///
/// Atoms are kept sorted by strictly increasing value, every mass is positive and
/// the total mass is 1 within [`MASS_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    atoms: Vec<Atom>,
}

impl DiscreteDistribution {
    pub fn new(atoms: Vec<(ExtendedRatio, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        let mut total = 0.0;
        for (i, &(value, mass)) in atoms.iter().enumerate() {
            if !(mass > 0.0 && mass.is_finite()) {
                return Err(Error::InvalidDistribution(format!(
                    "atom {i} at {value} has non-positive mass {mass}"
                )));
            }
            if i > 0 && atoms[i - 1].0 >= value {
                return Err(Error::InvalidDistribution(format!(
                    "atom values not strictly increasing at index {i} ({} then {value})",
                    atoms[i - 1].0
                )));
            }
            total += mass;
        }
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "masses sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            atoms: atoms
                .into_iter()
                .map(|(value, mass)| Atom { value, mass })
                .collect(),
        })
    }

    /// Builds a distribution from unsorted weighted values, summing the weights of
    /// equal values and discarding zero weights.
    pub fn from_weights<I>(weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExtendedRatio, f64)>,
    {
        let mut merged: BTreeMap<ExtendedRatio, f64> = BTreeMap::new();
        for (value, mass) in weights {
            *merged.entry(value).or_insert(0.0) += mass;
        }
        Self::new(merged.into_iter().filter(|&(_, m)| m > 0.0).collect())
    }

    pub fn point_mass(value: ExtendedRatio) -> Self {
        Self {
            atoms: vec![Atom { value, mass: 1.0 }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    /// Mass of the atom at exactly `value`, or 0.
    pub fn mass_at(&self, value: ExtendedRatio) -> f64 {
        self.atoms
            .binary_search_by(|a| a.value.cmp(&value))
            .map(|i| self.atoms[i].mass)
            .unwrap_or(0.0)
    }

    pub fn mass_at_infinity(&self) -> f64 {
        self.mass_at(ExtendedRatio::INFINITY)
    }

    pub fn mass_at_zero(&self) -> f64 {
        self.mass_at(ExtendedRatio::ZERO)
    }

    /// `F(tau)`: total mass of atoms `<= tau`; `F(inf) = 1`.
    pub fn cdf(&self, tau: ExtendedRatio) -> f64 {
        if tau.is_infinite() {
            return 1.0;
        }
        self.atoms
            .iter()
            .take_while(|a| a.value <= tau)
            .map(|a| a.mass)
            .sum()
    }

    /// `F(tau-)`: total mass of atoms `< tau`.
    pub fn cdf_left(&self, tau: ExtendedRatio) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.value < tau)
            .map(|a| a.mass)
            .sum()
    }

    /// Sum of `v * mass` over finite atoms.
    pub fn finite_mean(&self) -> f64 {
        self.atoms
            .iter()
            .filter(|a| !a.value.is_infinite())
            .map(|a| a.value.value() * a.mass)
            .sum()
    }

    /// Finite support values in increasing order.
    pub fn finite_support(&self) -> impl Iterator<Item = ExtendedRatio> + '_ {
        self.atoms
            .iter()
            .map(|a| a.value)
            .filter(|v| !v.is_infinite())
    }
}

/// `(1 - eta) F(tau-) + eta F(tau)`, the randomized-threshold CDF.
pub fn extended_cdf_eval(dist: &DiscreteDistribution, tau: ExtendedRatio, eta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Domain(format!("eta = {eta} outside [0, 1]")));
    }
    let left = dist.cdf_left(tau);
    let right = dist.cdf(tau);
    Ok(((1.0 - eta) * left + eta * right).clamp(0.0, 1.0))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonValue {
    Number(f64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDistribution {
    atoms: Vec<(JsonValue, f64)>,
}

impl Serialize for DiscreteDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let v = if a.value.is_infinite() {
                    JsonValue::Text("inf".into())
                } else {
                    JsonValue::Number(a.value.value())
                };
                (v, a.mass)
            })
            .collect();
        JsonDistribution { atoms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiscreteDistribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonDistribution::deserialize(deserializer)?;
        let atoms = raw
            .atoms
            .into_iter()
            .map(|(v, m)| {
                let value = match v {
                    JsonValue::Number(x) => x,
                    JsonValue::Text(s) if s.eq_ignore_ascii_case("inf") => f64::INFINITY,
                    JsonValue::Text(s) => {
                        return Err(D::Error::custom(format!("invalid atom value {s:?}")))
                    }
                };
                let value = ExtendedRatio::new(value).map_err(D::Error::custom)?;
                Ok((value, m))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        DiscreteDistribution::new(atoms).map_err(D::Error::custom)
    }
}
