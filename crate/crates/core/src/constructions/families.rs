//! Small explicit families: stars, stars of triangles, cycles with leaves.

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, RootedGraph};

/// Centre `0` joined to each of `1..n` by `k` parallel edges.
pub fn build_star(n: usize, k: u32) -> Result<Multigraph> {
    if n < 2 || k == 0 {
        return Err(Error::Infeasible(format!("star needs n >= 2 and k >= 1, got n={n} k={k}")));
    }
    Multigraph::from_edges(n, (1..n).map(|v| (0, v, k)))
}

/// Root `0` with `m − n` triangles through it and leaves on the rest of
/// the `n` non-root vertices. Triangle `i` uses vertices `2i+1, 2i+2`.
pub fn build_star_triangles_leaves(n_nonroot: usize, m: usize) -> Result<RootedGraph> {
    if m < n_nonroot || 2 * (m - n_nonroot) > n_nonroot || n_nonroot == 0 {
        return Err(Error::Infeasible(format!(
            "star of triangles needs n <= m <= 3n/2, got n={n_nonroot} m={m}"
        )));
    }
    let t = m - n_nonroot;
    let mut g = Multigraph::new(n_nonroot + 1);
    for i in 0..t {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        g.add_edge(0, a, 1)?;
        g.add_edge(0, b, 1)?;
        g.add_edge(a, b, 1)?;
    }
    for v in 2 * t + 1..=n_nonroot {
        g.add_edge(0, v, 1)?;
    }
    RootedGraph::new(g, 0)
}

/// Cycle on `0..cycle_len` with the remaining vertices as leaves on `0`.
pub fn build_cycle_with_leaves(n: usize, cycle_len: usize) -> Result<Multigraph> {
    if cycle_len < 3 || cycle_len > n {
        return Err(Error::Infeasible(format!(
            "cycle with leaves needs 3 <= cycle_len <= n, got n={n} cycle_len={cycle_len}"
        )));
    }
    let cycle = (0..cycle_len).map(|i| (i, (i + 1) % cycle_len));
    let leaves = (cycle_len..n).map(|v| (0, v));
    Multigraph::from_pairs(n, cycle.chain(leaves))
}
