//! Bounds for Queen-Bee networks, where every non-root vertex has an edge
//! to the root.

use serde::{Deserialize, Serialize};

use super::envelope::BoundEnvelope;
use crate::error::{Error, Result};

/// Lower bound on the total resistance to the root of one component of a
/// legal configuration with `s` vertices and conductance `2s − 1 + t`:
/// `(s + 2)/3 − 2t/3`, floored at `s² / (2(2s − 1 + t))` (every vertex has
/// resistance at least the inverse of its incident conductance).
pub fn qb_component_lower(s: usize, t: usize) -> Result<f64> {
    if s == 0 {
        return Err(Error::InvalidParameter("a component has at least one vertex".into()));
    }
    let (sf, tf) = (s as f64, t as f64);
    let formula = (sf + 2.0) / 3.0 - 2.0 * tf / 3.0;
    Ok(formula.max(sf * sf / (2.0 * (2.0 * sf - 1.0 + tf))))
}

/// As [`qb_component_lower`], but exact for a single vertex: `1/(t + 1)`.
pub fn qb_component_lower_exact(s: usize, t: usize) -> Result<f64> {
    if s == 1 {
        Ok(1.0 / (t as f64 + 1.0))
    } else {
        qb_component_lower(s, t)
    }
}

fn pair_total(c: f64, a: f64, b: f64) -> f64 {
    let through = |other: f64| if c + other > 0.0 { c * other / (c + other) } else { 0.0 };
    1.0 / (a + through(b)) + 1.0 / (b + through(a))
}

/// True minimum total resistance to the root of a two-vertex legal
/// component with conductance `3 + t`: integer internal conductance
/// `≥ 1`, integer root conductance `≥ 2` split freely between the two
/// vertices.
pub fn qb_pair_component_optimum(t: usize) -> f64 {
    let total = 3 + t;
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut best = f64::INFINITY;
    for internal in 1..=total - 2 {
        let c = internal as f64;
        let r = (total - internal) as f64;
        // total resistance is convex in the split
        let (mut lo, mut hi) = (0.0, r / 2.0);
        while hi - lo > 1e-12 {
            let x1 = hi - phi * (hi - lo);
            let x2 = lo + phi * (hi - lo);
            if pair_total(c, x1, r - x1) < pair_total(c, x2, r - x2) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        let a = (lo + hi) / 2.0;
        best = best.min(pair_total(c, a, r - a));
    }
    best
}

/// `(5 − α)/3` up to `α = 3½`, `1/(α − 3/2)` beyond.
pub fn qb_lower(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 2.0 {
        return Err(Error::InvalidParameter(format!("average degree {alpha} below 2")));
    }
    Ok(if alpha <= 3.5 { (5.0 - alpha) / 3.0 } else { 1.0 / (alpha - 1.5) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QbGapRow {
    pub alpha: f64,
    pub upper_envelope: f64,
    pub qb_lower: f64,
    /// `qb_lower − upper_envelope`.
    pub margin: f64,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QbGapReport {
    pub rows: Vec<QbGapRow>,
    pub min_margin: f64,
    pub min_margin_alpha: f64,
    pub all_strict: bool,
}

/// Compares the default envelope with the Queen-Bee lower bound; every
/// `α > 2` in the grid should show a strictly positive margin.
pub fn qb_gap_check(alphas: &[f64]) -> Result<QbGapReport> {
    let env = BoundEnvelope::standard();
    let mut rows = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let upper = env.evaluate(alpha)?;
        let lower = qb_lower(alpha)?;
        let margin = lower - upper;
        rows.push(QbGapRow {
            alpha,
            upper_envelope: upper,
            qb_lower: lower,
            margin,
            strict: alpha > 2.0 && margin > 0.0,
        });
    }
    let (min_margin, min_margin_alpha) = rows
        .iter()
        .filter(|r| r.alpha > 2.0)
        .map(|r| (r.margin, r.alpha))
        .fold((f64::INFINITY, f64::NAN), |a, b| if b.0 < a.0 { b } else { a });
    let all_strict = rows.iter().filter(|r| r.alpha > 2.0).all(|r| r.strict);
    Ok(QbGapReport {
        rows,
        min_margin,
        min_margin_alpha,
        all_strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_values() {
        assert!((qb_component_lower(3, 0).unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert!((qb_component_lower(1, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!((qb_component_lower(2, 1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((qb_component_lower_exact(1, 3).unwrap() - 0.25).abs() < 1e-15);
        assert!(qb_component_lower(1, 10).unwrap() > 0.0);
        assert!(qb_component_lower(0, 0).is_err());
    }

    #[test]
    fn pair_component_beats_the_formula_strictly() {
        // t = 0: one unit edge inside and unit edges to the root.
        assert!((qb_pair_component_optimum(0) - 4.0 / 3.0).abs() < 1e-9);
        let opt = qb_pair_component_optimum(1);
        assert!(opt > 2.0 / 3.0 + 0.1, "{opt}");
        for t in 0..6 {
            assert!(qb_pair_component_optimum(t) >= qb_component_lower(2, t).unwrap());
        }
    }

    #[test]
    fn piecewise_lower_bound() {
        assert!((qb_lower(3.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((qb_lower(3.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((qb_lower(3.5 + 1e-12).unwrap() - 0.5).abs() < 1e-9);
        assert!((qb_lower(4.0).unwrap() - 0.4).abs() < 1e-15);
        assert!(qb_lower(1.0).is_err());
    }

    #[test]
    fn gap_examples() {
        let r = qb_gap_check(&[2.0, 2.5, 3.59, 4.0]).unwrap();
        assert!(r.rows[0].margin.abs() < 1e-15 && !r.rows[0].strict);
        assert!((r.rows[1].upper_envelope - 0.8227).abs() < 1e-4);
        assert!(r.rows[1].strict);
        assert!((r.rows[3].margin - 0.025).abs() < 1e-12);
        assert!(r.all_strict);
    }
}
