//! Lower bounds, the convex upper envelope, Queen-Bee bounds and the
//! exact checks behind the Queen-Bee gap.

pub mod appendix;
pub mod certificate;
pub mod envelope;
pub mod queen_bee;
pub mod sweep;

pub use appendix::{
    appendix_b_discriminant, appendix_b_s_form, appendix_b_segment_checks, appendix_b_t_form, check_discriminants,
    segment_checks_at, DiscriminantReport, SegmentReport,
};
pub use certificate::{two_step_certificate, TwoStepCertificate};
pub use envelope::{conjecture_f, upper_envelope, BoundEnvelope, DEFAULT_ENVELOPE_K, TEN_THIRDS_VALUE};
pub use queen_bee::{
    qb_component_lower, qb_component_lower_exact, qb_gap_check, qb_lower, qb_pair_component_optimum, QbGapReport,
    QbGapRow,
};
pub use sweep::{bound_sweep, write_sweep_csv, SweepRow};

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

fn check_alpha(alpha: f64, min: f64) -> Result<()> {
    if alpha.is_nan() || alpha < min {
        return Err(Error::InvalidParameter(format!("average degree {alpha} below {min}")));
    }
    Ok(())
}

/// `(α − 1)/(α(α − 2))`: resistance to infinity in the α-regular tree.
pub fn regular_tree_limit(alpha: f64) -> f64 {
    (alpha - 1.0) / (alpha * (alpha - 2.0))
}

/// `A ≥ 1/α`, from `R_xy ≥ 1/d_x` and convexity.
pub fn lower_bound_one_step(alpha: f64) -> Result<f64> {
    check_alpha(alpha, 2.0)?;
    Ok(1.0 / alpha)
}

/// `b(α) ≥ 1/(α − 1)`; twice this bounds `a(α)`.
pub fn lower_bound_two_step_closed(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 1.0 {
        return Err(Error::InvalidParameter(format!("average degree {alpha} must exceed 1")));
    }
    Ok(1.0 / (alpha - 1.0))
}

/// `2/α − 4m/(n(n − 1))`, from `R_xy ≥ 1/d_x + 1/d_y` on non-adjacent pairs.
pub fn nonneighbour_closed(n: usize, m: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let (nf, mf) = (n as f64, m as f64);
    Ok(nf / mf - 4.0 * mf / (nf * (nf - 1.0)))
}

/// Per-graph versions of both degree bounds on `A`:
/// `(1/n) Σ 1/d_x` and `(2/n) Σ 1/d_x − 4m/(n(n − 1))`.
pub fn degree_lower_bounds(g: &Multigraph) -> Result<(f64, f64)> {
    let n = g.n_vertices();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let mut inv = 0.0;
    for (v, d) in g.degrees().into_iter().enumerate() {
        if d == 0 {
            return Err(Error::IsolatedVertex(v));
        }
        inv += 1.0 / d as f64;
    }
    let nf = n as f64;
    let one = inv / nf;
    Ok((one, 2.0 * one - 4.0 * g.edge_count() as f64 / (nf * (nf - 1.0))))
}
