use crate::error::{Error, Result};

/// Slack used when snapping coordinates and locating vertices.
const SNAP: f64 = 1e-12;
/// Out-of-range coordinates within this distance of `[0, 1]` are clamped.
const RANGE_SLACK: f64 = 1e-9;

/// A monotone polyline in the unit square, stored as its completed graph.
///
/// Jumps are vertical segments (consecutive vertices with equal `p`). The first
/// vertex has `p = 0` and the last has `p = 1`. Outside `[0, 1]` the curve is
/// extended by 0 on the left and by 1 on the right, so a first vertex above 0 or
/// a last vertex below 1 implies a jump at the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCurve {
    vertices: Vec<(f64, f64)>,
}

impl MonotoneCurve {
    /// Validates and normalizes a vertex list.
    ///
    /// Coordinates within `1e-9` of the unit square are clamped into it, decreases
    /// smaller than `1e-12` are treated as rounding, and consecutive duplicates are
    /// dropped. Anything else that breaks monotonicity is an error naming the
    /// offending vertex.
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self> {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(vertices.len());
        for (index, (p, q)) in vertices.into_iter().enumerate() {
            let p = clamp_unit(p).ok_or_else(|| bad(index, format!("p = {p} outside [0, 1]")))?;
            let q = clamp_unit(q).ok_or_else(|| bad(index, format!("q = {q} outside [0, 1]")))?;
            let (p, q) = match out.last() {
                Some(&(pp, pq)) => {
                    if p < pp - SNAP {
                        return Err(bad(index, format!("p decreases from {pp} to {p}")));
                    }
                    if q < pq - SNAP {
                        return Err(bad(index, format!("q decreases from {pq} to {q}")));
                    }
                    (p.max(pp), q.max(pq))
                }
                None => (p, q),
            };
            if out.last() != Some(&(p, q)) {
                out.push((p, q));
            }
        }
        match (out.first(), out.last()) {
            (Some(&(p0, _)), Some(&(p1, _))) => {
                if p0.abs() > RANGE_SLACK {
                    return Err(bad(0, format!("curve must start at p = 0, found {p0}")));
                }
                if (p1 - 1.0).abs() > RANGE_SLACK {
                    return Err(bad(out.len() - 1, format!("curve must end at p = 1, found {p1}")));
                }
            }
            _ => return Err(bad(0, "empty curve".into())),
        }
        let n = out.len();
        out[0].0 = 0.0;
        out[n - 1].0 = 1.0;
        Ok(Self { vertices: out })
    }

    pub fn diagonal() -> Self {
        Self {
            vertices: vec![(0.0, 0.0), (1.0, 1.0)],
        }
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Right limit of the completed graph at `p` (the top of a jump), with the
    /// extension conventions applied outside `[0, 1]`.
    pub fn right_value(&self, p: f64) -> f64 {
        let v = &self.vertices;
        if p > 1.0 + SNAP {
            return 1.0;
        }
        let upto = v.partition_point(|&(x, _)| x <= p + SNAP);
        if upto == 0 {
            return 0.0;
        }
        let j = upto - 1;
        if j == v.len() - 1 {
            return 1.0;
        }
        interpolate(v[j], v[j + 1], p).max(v[j].1)
    }

    /// Left limit of the completed graph at `p` (the bottom of a jump), with the
    /// extension conventions applied outside `[0, 1]`.
    pub fn left_value(&self, p: f64) -> f64 {
        let v = &self.vertices;
        if p > 1.0 + SNAP {
            return 1.0;
        }
        let i = v.partition_point(|&(x, _)| x < p - SNAP);
        if i == 0 {
            return 0.0;
        }
        if i == v.len() {
            return v[i - 1].1;
        }
        interpolate(v[i - 1], v[i], p).min(v[i].1)
    }

    /// True when consecutive non-vertical segment slopes are nonincreasing within
    /// `tol` and no vertical segment occurs after `p = 0`.
    pub fn is_concave(&self, tol: f64) -> bool {
        let mut prev = f64::INFINITY;
        for w in self.vertices.windows(2) {
            let (dp, dq) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            let slope = if dp > 0.0 {
                dq / dp
            } else if w[0].0 == 0.0 {
                f64::INFINITY
            } else {
                return false;
            };
            if slope > prev + tol {
                return false;
            }
            prev = slope;
        }
        true
    }
}

fn interpolate(a: (f64, f64), b: (f64, f64), p: f64) -> f64 {
    let dp = b.0 - a.0;
    if dp <= 0.0 {
        return b.1;
    }
    let t = ((p - a.0) / dp).clamp(0.0, 1.0);
    a.1 + t * (b.1 - a.1)
}

fn clamp_unit(x: f64) -> Option<f64> {
    if x.is_finite() && (-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&x) {
        Some(x.clamp(0.0, 1.0))
    } else {
        None
    }
}

fn bad(index: usize, reason: String) -> Error {
    Error::InvalidCurve { index, reason }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_duplicates_and_snaps_ends() {
        let c = MonotoneCurve::new(vec![(0.0, 0.0), (0.0, 0.0), (0.5, 0.5), (1.0 - 1e-12, 1.0)])
            .unwrap();
        assert_eq!(c.vertices(), &[(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)]);
    }

    #[test]
    fn rejects_non_monotone_with_index() {
        let err = MonotoneCurve::new(vec![(0.0, 0.0), (0.5, 0.6), (0.7, 0.4), (1.0, 1.0)])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidCurve { index: 2, .. }));
        assert!(MonotoneCurve::new(vec![(0.1, 0.0), (1.0, 1.0)]).is_err());
        assert!(MonotoneCurve::new(vec![(0.0, 0.0), (0.9, 1.0)]).is_err());
        assert!(MonotoneCurve::new(vec![(0.0, 0.0), (1.0, 1.5)]).is_err());
        assert!(MonotoneCurve::new(vec![]).is_err());
    }

    #[test]
    fn limits_on_a_staircase() {
        let c = MonotoneCurve::new(vec![
            (0.0, 0.0),
            (0.0, 0.5),
            (0.5, 0.5),
            (0.5, 1.0),
            (1.0, 1.0),
        ])
        .unwrap();
        assert_eq!(c.left_value(0.0), 0.0);
        assert_eq!(c.right_value(0.0), 0.5);
        assert_eq!(c.left_value(0.5), 0.5);
        assert_eq!(c.right_value(0.5), 1.0);
        assert_eq!(c.right_value(0.25), 0.5);
        assert_eq!(c.left_value(-0.3), 0.0);
        assert_eq!(c.right_value(1.3), 1.0);
    }

    #[test]
    fn boundary_extension() {
        // constant-one curve jumps at p = 0
        let one = MonotoneCurve::new(vec![(0.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(one.left_value(0.0), 0.0);
        assert_eq!(one.right_value(0.0), 1.0);
        // curve ending below 1 jumps at p = 1
        let low = MonotoneCurve::new(vec![(0.0, 0.0), (1.0, 0.5)]).unwrap();
        assert_eq!(low.left_value(1.0), 0.5);
        assert_eq!(low.right_value(1.0), 1.0);
        assert_eq!(low.right_value(0.5), 0.25);
    }

    #[test]
    fn concavity() {
        assert!(MonotoneCurve::diagonal().is_concave(1e-9));
        let jump = MonotoneCurve::new(vec![(0.0, 0.0), (0.0, 0.5), (1.0, 1.0)]).unwrap();
        assert!(jump.is_concave(1e-9));
        let stair =
            MonotoneCurve::new(vec![(0.0, 0.0), (0.5, 0.0), (0.5, 1.0), (1.0, 1.0)]).unwrap();
        assert!(!stair.is_concave(1e-9));
    }
}
