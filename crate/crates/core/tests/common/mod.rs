//! Reference implementations used only by tests. None of these call into the
//! library's numeric routines.
#![allow(dead_code)]

use mlroc::estimators::{Hypothesis, LabeledSample};
use mlroc::{ExtendedRatio, MonotoneCurve};
use rand::Rng;

pub fn ratio(x: f64) -> ExtendedRatio {
    ExtendedRatio::new(x).unwrap()
}

pub fn sample(label: u8, r: f64) -> LabeledSample {
    let label = if label == 0 { Hypothesis::H0 } else { Hypothesis::H1 };
    LabeledSample::new(label, r).unwrap()
}

/// `erf` by its Maclaurin series; accurate to ~1e-12 for `|x| <= 4`.
pub fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term.abs() > 1e-17 * sum.abs().max(1e-300) || n < 5.0 {
        n += 1.0;
        term *= -x * x / n;
        sum += term / (2.0 * n + 1.0);
        if n > 400.0 {
            break;
        }
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

pub fn phi_series(x: f64) -> f64 {
    0.5 * (1.0 + erf_series(x / std::f64::consts::SQRT_2))
}

/// Root of `phi_series(x) = u` by plain bisection.
pub fn quantile_bisect(u: f64) -> f64 {
    let (mut lo, mut hi) = (-5.6, 5.6);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi_series(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Completed graph of a curve as a polyline from (0, 0) to (1, 1).
fn completed(c: &MonotoneCurve) -> Vec<(f64, f64)> {
    let mut v = c.vertices().to_vec();
    if v[0] != (0.0, 0.0) {
        v.insert(0, (0.0, 0.0));
    }
    if *v.last().unwrap() != (1.0, 1.0) {
        v.push((1.0, 1.0));
    }
    v
}

/// `w = q - p` as a function of `u = p + q` along the completed graph.
fn rotated(c: &MonotoneCurve) -> Vec<(f64, f64)> {
    completed(c).into_iter().map(|(p, q)| (p + q, q - p)).collect()
}

fn interp(pts: &[(f64, f64)], u: f64) -> f64 {
    if u <= pts[0].0 {
        return pts[0].1;
    }
    for w in pts.windows(2) {
        let ((u0, w0), (u1, w1)) = (w[0], w[1]);
        if u <= u1 {
            if u1 - u0 <= 0.0 {
                return w1;
            }
            return w0 + (w1 - w0) * (u - u0) / (u1 - u0);
        }
    }
    pts.last().unwrap().1
}

/// Lévy distance by rotating the plane 45 degrees: each completed graph becomes
/// a 1-Lipschitz function of `u = p + q`, and a diagonal shift by `eps` moves
/// `w = q - p` by `2 eps`. So the distance is half the sup gap in `w`.
pub fn levy_rotated(a: &MonotoneCurve, b: &MonotoneCurve) -> f64 {
    let (ra, rb) = (rotated(a), rotated(b));
    let mut us: Vec<f64> = ra.iter().chain(&rb).map(|x| x.0).collect();
    us.sort_by(f64::total_cmp);
    us.iter()
        .map(|&u| (interp(&ra, u) - interp(&rb, u)).abs())
        .fold(0.0, f64::max)
        / 2.0
}

/// Value of the extended curve at `p`, taking the top of any vertical run.
fn upper(c: &[(f64, f64)], p: f64) -> f64 {
    if p < 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let mut best = 0.0f64;
    for w in c.windows(2) {
        let ((p0, q0), (p1, q1)) = (w[0], w[1]);
        if p0 <= p && p <= p1 {
            let q = if p1 == p0 { q1 } else { q0 + (q1 - q0) * (p - p0) / (p1 - p0) };
            best = best.max(q);
        }
    }
    best
}

/// Value at `p`, taking the bottom of any vertical run.
fn lower(c: &[(f64, f64)], p: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    if p > 1.0 {
        return 1.0;
    }
    let mut best = 1.0f64;
    for w in c.windows(2) {
        let ((p0, q0), (p1, q1)) = (w[0], w[1]);
        if p0 <= p && p <= p1 {
            let q = if p1 == p0 { q0 } else { q0 + (q1 - q0) * (p - p0) / (p1 - p0) };
            best = best.min(q);
        }
    }
    best
}

fn inside_band(a: &[(f64, f64)], b: &[(f64, f64)], eps: f64, ps: &[f64]) -> bool {
    ps.iter().all(|&p| {
        upper(a, p) <= upper(b, p + eps) + eps + 1e-12 && lower(a, p) >= lower(b, p - eps) - eps - 1e-12
    })
}

/// Smallest multiple of `step` at which each curve sits in the other's Lévy
/// band, checked on a dense grid of abscissae plus every (shifted) vertex.
pub fn levy_grid(a: &MonotoneCurve, b: &MonotoneCurve, step: f64) -> f64 {
    let (ca, cb) = (completed(a), completed(b));
    let mut base: Vec<f64> = (0..=1000).map(|k| k as f64 / 1000.0).collect();
    base.extend(ca.iter().chain(&cb).map(|v| v.0));
    let feasible = |eps: f64| {
        let mut ps = base.clone();
        for v in ca.iter().chain(&cb) {
            ps.push(v.0 - eps);
            ps.push(v.0 + eps);
        }
        inside_band(&ca, &cb, eps, &ps) && inside_band(&cb, &ca, eps, &ps)
    };
    let (mut lo, mut hi) = (0usize, (1.0 / step).ceil() as usize);
    if feasible(0.0) {
        return 0.0;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if feasible(mid as f64 * step) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi as f64 * step
}

/// Sup of `|A - B|` over a dense grid and both curves' vertices.
pub fn sup_gap(a: &MonotoneCurve, b: &MonotoneCurve) -> f64 {
    let (ca, cb) = (completed(a), completed(b));
    let mut ps: Vec<f64> = (0..=2000).map(|k| k as f64 / 2000.0).collect();
    ps.extend(ca.iter().chain(&cb).map(|v| v.0));
    ps.iter()
        .map(|&p| {
            (upper(&ca, p) - upper(&cb, p))
                .abs()
                .max((lower(&ca, p) - lower(&cb, p)).abs())
        })
        .fold(0.0, f64::max)
}

/// A random monotone curve with a mix of sloped pieces, jumps and flats.
pub fn random_curve<R: Rng + ?Sized>(rng: &mut R) -> MonotoneCurve {
    let k = rng.random_range(1..6);
    let mut ps: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..1.0)).collect();
    ps.sort_by(f64::total_cmp);
    let mut qs: Vec<f64> = (0..k + 1).map(|_| rng.random_range(0.0..1.0)).collect();
    qs.sort_by(f64::total_cmp);
    let start = if rng.random_bool(0.3) { qs[0] } else { 0.0 };
    let mut v = vec![(0.0, start)];
    for i in 0..k {
        let q = qs[i + 1].max(v.last().unwrap().1);
        if rng.random_bool(0.3) {
            let prev = v.last().unwrap().1;
            v.push((ps[i], prev));
        }
        v.push((ps[i], q));
    }
    let end = if rng.random_bool(0.2) { v.last().unwrap().1 } else { 1.0 };
    v.push((1.0, end));
    MonotoneCurve::new(v).unwrap()
}

/// Simpson's rule on `[a, b]` with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// `P{X1 > X0}` for `X0 ~ N(0,1)`, `X1 ~ N(1,1)` by nested Simpson integration
/// of the two densities.
pub fn binormal_auc_oracle() -> f64 {
    let cdf = |t: f64| 0.5 + simpson(normal_pdf, 0.0, t, 2000);
    simpson(|x0| normal_pdf(x0) * (1.0 - cdf(x0 - 1.0)), -9.0, 9.0, 1800)
}
