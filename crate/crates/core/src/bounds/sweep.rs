//! All bound curves on a grid of average degrees.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{conjecture_f, lower_bound_two_step_closed, qb_lower, BoundEnvelope};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub lower_two_step: f64,
    pub qb_lower: f64,
    pub upper_envelope: f64,
    pub conjecture_f: f64,
    /// `qb_lower − upper_envelope`.
    pub qb_margin: f64,
}

/// Rows for `α = lo, lo + step, …` up to `hi` (inclusive within rounding).
pub fn bound_sweep(lo: f64, hi: f64, step: f64) -> Result<Vec<SweepRow>> {
    if !(lo >= 2.0 && hi > lo && step > 0.0) || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sweep needs 2 ≤ lo < hi and step > 0, got lo={lo} hi={hi} step={step}"
        )));
    }
    let env = BoundEnvelope::standard();
    let k = hi.ceil().max(16.0);
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let alpha = lo + i as f64 * step;
            let upper = env.evaluate(alpha)?;
            let qb = qb_lower(alpha)?;
            Ok(SweepRow {
                alpha,
                lower_two_step: lower_bound_two_step_closed(alpha)?,
                qb_lower: qb,
                upper_envelope: upper,
                conjecture_f: conjecture_f(alpha, k)?,
                qb_margin: qb - upper,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
