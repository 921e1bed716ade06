//! Piecewise-linear convex upper bounds on `b(α)`.

use serde::{Deserialize, Serialize};

use super::regular_tree_limit;
use crate::error::{Error, Result};

/// Rooted resistance bound of the split construction at `α = 10/3`,
/// rounded up as it is quoted.
pub const TEN_THIRDS_VALUE: f64 = 0.5271865;

/// Largest regular degree in the default envelope.
pub const DEFAULT_ENVELOPE_K: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEnvelope {
    /// Input points sorted by α.
    pub points: Vec<(f64, f64)>,
    /// Vertices of the lower convex hull, sorted by α.
    pub hull: Vec<(f64, f64)>,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn lower_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

fn interpolate(hull: &[(f64, f64)], alpha: f64) -> f64 {
    let i = hull.partition_point(|p| p.0 < alpha);
    if i == 0 {
        return hull[0].1;
    }
    if i == hull.len() {
        return hull[i - 1].1;
    }
    let ((x0, y0), (x1, y1)) = (hull[i - 1], hull[i]);
    y0 + (y1 - y0) * (alpha - x0) / (x1 - x0)
}

/// Lower convex hull of construction points `(α, b)`.
pub fn upper_envelope(points: &[(f64, f64)]) -> Result<BoundEnvelope> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("an envelope needs at least two points".into()));
    }
    if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(Error::InvalidParameter("envelope points must be finite".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidParameter("envelope points need distinct α".into()));
    }
    let hull = lower_hull(&sorted);
    Ok(BoundEnvelope { points: sorted, hull })
}

impl BoundEnvelope {
    /// The star at `(2, 1)`, the split construction at `(10/3, 0.5271865)`
    /// and the regular constructions `(k, (k−1)/(k(k−2)))` for `3 ≤ k ≤ K`.
    pub fn default_points(k_max: usize) -> Vec<(f64, f64)> {
        let mut points = vec![(2.0, 1.0), (10.0 / 3.0, TEN_THIRDS_VALUE)];
        points.extend((3..=k_max).map(|k| (k as f64, regular_tree_limit(k as f64))));
        points
    }

    pub fn standard() -> Self {
        upper_envelope(&Self::default_points(DEFAULT_ENVELOPE_K)).expect("default points are valid")
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.hull[0].0, self.hull[self.hull.len() - 1].0)
    }

    pub fn evaluate(&self, alpha: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("α = {alpha} outside [{lo}, {hi}]")));
        }
        Ok(interpolate(&self.hull, alpha))
    }
}

fn tangent_slope(x: f64) -> f64 {
    (regular_tree_limit(x) - 1.0) / (x - 2.0)
}

/// Largest convex function on `[2, K]` with `f(2) ≤ 1` and
/// `f(x) ≤ (x−1)/(x(x−2))`.
///
/// The constraint curve is convex on `(2, ∞)`, so `f` follows the tangent
/// line from `(2, 1)` up to the touching point and the curve after it.
/// The touching point is located on a uniform grid and refined by golden
/// section search.
pub fn conjecture_f(alpha: f64, k_max: f64) -> Result<f64> {
    if k_max < 16.0 {
        return Err(Error::InvalidParameter(format!("grid bound K = {k_max} below 16")));
    }
    if !(2.0..=k_max).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("α = {alpha} outside [2, {k_max}]")));
    }
    let steps = 4096;
    let h = (k_max - 2.0) / steps as f64;
    let best = (1..=steps)
        .min_by(|&i, &j| tangent_slope(2.0 + i as f64 * h).total_cmp(&tangent_slope(2.0 + j as f64 * h)))
        .expect("nonempty grid");
    let (mut a, mut b) = (2.0 + (best as f64 - 1.0).max(0.5) * h, (2.0 + (best + 1) as f64 * h).min(k_max));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-13 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if tangent_slope(c) < tangent_slope(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let touch = (a + b) / 2.0;
    Ok(if alpha <= touch {
        1.0 + tangent_slope(touch) * (alpha - 2.0)
    } else {
        regular_tree_limit(alpha)
    })
}
