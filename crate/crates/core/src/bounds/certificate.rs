//! Two-step conductance certificate for rooted graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{RootedGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoStepCertificate {
    /// Upper bound on each vertex's conductance to the root once everything
    /// two or more steps away is shorted to it.
    pub per_vertex_conductance_bound: BTreeMap<Vertex, f64>,
    pub total: f64,
    /// `n / total`, a lower bound on `B` by convexity.
    #[serde(rename = "implied_B_lower")]
    pub implied_b_lower: f64,
    /// `mean(1 / bound_x)`, never smaller than `implied_B_lower`.
    #[serde(rename = "mean_B_lower")]
    pub mean_b_lower: f64,
    pub alpha: f64,
    /// `(α − 1) n`.
    pub budget: f64,
    pub within_budget: bool,
    /// True when no leaf hangs off a non-root vertex.
    pub applicable: bool,
    pub stray_leaves: Vec<Vertex>,
}

/// Per vertex `x`: `e_x + Σ_{y ∈ Γ'(x)} (d_y − 1)/d_y`, with `Γ'(x)` the
/// non-root neighbours counted with multiplicity and `e_x` the number of
/// root edges at `x`.
///
/// The per-vertex bounds are valid for any rooted graph; a neighbour of
/// degree one contributes nothing.
pub fn two_step_certificate(g: &RootedGraph) -> Result<TwoStepCertificate> {
    let n = g.n_nonroot();
    if n == 0 {
        return Err(Error::InvalidParameter("rooted graph has no non-root vertex".into()));
    }
    let graph = g.graph();
    let root = g.root();
    let degrees = graph.degrees();
    let adj = graph.adjacency();
    let mut per = BTreeMap::new();
    let mut total = 0.0;
    let mut inv_sum = 0.0;
    for x in g.non_root_vertices() {
        let mut bound = 0.0;
        for &(y, k) in &adj[x] {
            bound += if y == root {
                k as f64
            } else {
                let d = degrees[y] as f64;
                k as f64 * (d - 1.0) / d
            };
        }
        total += bound;
        inv_sum += 1.0 / bound;
        per.insert(x, bound);
    }
    let nf = n as f64;
    let alpha = g.alpha();
    let budget = (alpha - 1.0) * nf;
    let stray_leaves = g.leaf_report().stray_leaves;
    Ok(TwoStepCertificate {
        per_vertex_conductance_bound: per,
        total,
        implied_b_lower: nf / total,
        mean_b_lower: inv_sum / nf,
        alpha,
        budget,
        within_budget: total <= budget * (1.0 + 1e-12) + 1e-12,
        applicable: stray_leaves.is_empty(),
        stray_leaves,
    })
}
