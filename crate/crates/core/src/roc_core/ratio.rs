use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A likelihood ratio in `[0, +inf]`.
///
/// NaN and negative inputs are rejected; `-0.0` is normalized to `0.0` so that
/// bitwise equality coincides with numeric equality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedRatio(f64);

impl ExtendedRatio {
    pub const ZERO: Self = Self(0.0);
    pub const ONE: Self = Self(1.0);
    pub const INFINITY: Self = Self(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 || value == f64::NEG_INFINITY {
            return Err(Error::InvalidRatio(value));
        }
        // maps -0.0 to +0.0
        Ok(Self(value + 0.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// `1/r` with `1/0 = inf` and `1/inf = 0`.
    pub fn reciprocal(self) -> Self {
        if self.is_zero() {
            Self::INFINITY
        } else if self.is_infinite() {
            Self::ZERO
        } else {
            Self(1.0 / self.0)
        }
    }
}

impl Eq for ExtendedRatio {}

impl PartialOrd for ExtendedRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl TryFrom<f64> for ExtendedRatio {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<ExtendedRatio> for f64 {
    fn from(r: ExtendedRatio) -> f64 {
        r.0
    }
}

impl fmt::Display for ExtendedRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}
