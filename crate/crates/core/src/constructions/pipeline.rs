//! End-to-end run of the split construction: high-girth base graph,
//! local-resistance rooting, then mixing with root leaves down to a target
//! average degree.

use serde::{Deserialize, Serialize};

use crate::constructions::{build_split_4regular, leaves_for_alpha, mix_with_leaves_to_alpha, theorem64_best_p, LocalRooting};
use crate::error::Result;
use crate::resistance::{average_resistance_via_root, root_resistances};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitPipeline {
    pub n_base: usize,
    pub g_min: usize,
    pub girth: Option<usize>,
    pub n: usize,
    pub alpha_base: f64,
    pub stage: LocalRooting,
    pub target_alpha: f64,
    pub leaves: usize,
    pub mixed_n_nonroot: usize,
    pub mixed_alpha: f64,
    #[serde(rename = "mixed_B")]
    pub mixed_b: f64,
    /// `A` of the mixed graph with the root as an ordinary vertex.
    #[serde(rename = "mixed_A")]
    pub mixed_a: f64,
}

impl SplitPipeline {
    /// `A ≤ 2B` on the mixed graph.
    pub fn a_within_twice_b(&self) -> bool {
        self.mixed_a <= 2.0 * self.mixed_b * (1.0 + 1e-12)
    }
}

/// Builds the split graph from `n_base` base vertices with girth at least
/// `g_min`, roots it at depth `depth` with tolerance `eps` (best of
/// `p_grid`, or the default `p` when the grid is empty), and pads with root
/// leaves to `target_alpha`.
pub fn split_pipeline(
    n_base: usize,
    g_min: usize,
    depth: usize,
    eps: f64,
    p_grid: &[f64],
    target_alpha: f64,
    seed: u64,
) -> Result<SplitPipeline> {
    let g = build_split_4regular(n_base, seed, g_min)?;
    let stage = if p_grid.is_empty() {
        crate::constructions::theorem64_rooting(&g, depth, eps, None, seed)?
    } else {
        theorem64_best_p(&g, depth, eps, p_grid, seed)?
    };
    let rooted = stage.rooted.clone().expect("rooting keeps its graph");
    let leaves = leaves_for_alpha(&rooted, target_alpha)?;
    let mixed = mix_with_leaves_to_alpha(&rooted, target_alpha)?;
    let r = root_resistances(&mixed)?;
    let mixed_b = mixed.non_root_vertices().map(|v| r[v]).sum::<f64>() / mixed.n_nonroot() as f64;
    let mixed_a = average_resistance_via_root(&mixed, &r)?;
    Ok(SplitPipeline {
        n_base,
        g_min,
        girth: g.girth(),
        n: g.n_vertices(),
        alpha_base: g.average_degree(),
        stage,
        target_alpha,
        leaves,
        mixed_n_nonroot: mixed.n_nonroot(),
        mixed_alpha: mixed.alpha(),
        mixed_b,
        mixed_a,
    })
}
