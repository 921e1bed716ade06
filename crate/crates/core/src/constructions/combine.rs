//! Gluing rooted graphs at their roots.

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, RootedGraph};

/// Disjoint copies of the parts sharing one root (id `0`), plus
/// `extra_leaves` leaves on the root.
pub fn rooted_union(parts: &[RootedGraph], extra_leaves: usize) -> Result<RootedGraph> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("rooted union needs at least one part".into()));
    }
    let total: usize = parts.iter().map(|p| p.n_nonroot()).sum::<usize>() + extra_leaves;
    let mut g = Multigraph::new(total + 1);
    let mut offset = 1;
    for part in parts {
        let root = part.root();
        let map = |v: usize| {
            if v == root {
                0
            } else if v < root {
                offset + v
            } else {
                offset + v - 1
            }
        };
        for (u, v, k) in part.graph().edges() {
            g.add_edge(map(u), map(v), k)?;
        }
        offset += part.n_nonroot();
    }
    for v in offset..offset + extra_leaves {
        g.add_edge(0, v, 1)?;
    }
    RootedGraph::new(g, 0)
}

/// Number of root leaves that brings the rooted average degree of `g`
/// down to at most `target_alpha`.
pub fn leaves_for_alpha(g: &RootedGraph, target_alpha: f64) -> Result<usize> {
    if target_alpha <= 2.0 {
        return Err(Error::InvalidParameter(format!(
            "leaves have average degree 2; target {target_alpha} is unreachable"
        )));
    }
    let n = g.n_nonroot() as f64;
    let m = g.edge_count() as f64;
    let need = (2.0 * m - target_alpha * n) / (target_alpha - 2.0);
    Ok(if need <= 0.0 { 0 } else { (need - 1e-9).ceil() as usize })
}

/// `g` with enough root leaves to have rooted average degree at most
/// `target_alpha`.
pub fn mix_with_leaves_to_alpha(g: &RootedGraph, target_alpha: f64) -> Result<RootedGraph> {
    let leaves = leaves_for_alpha(g, target_alpha)?;
    rooted_union(std::slice::from_ref(g), leaves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_star_triangles_leaves;
    use crate::resistance::rooted_summary;

    fn b(g: &RootedGraph) -> f64 {
        rooted_summary(g).unwrap().b
    }

    #[test]
    fn copies_keep_b() {
        let part = build_star_triangles_leaves(5, 7).unwrap();
        let u = rooted_union(&[part.clone(), part.clone(), part.clone()], 0).unwrap();
        assert_eq!(u.n_nonroot(), 15);
        assert_eq!(u.edge_count(), 21);
        assert!((b(&u) - b(&part)).abs() < 1e-12);
    }

    #[test]
    fn triangle_plus_leaf() {
        let tri = RootedGraph::new(Multigraph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap(), 0).unwrap();
        let u = rooted_union(&[tri], 1).unwrap();
        assert!((b(&u) - 7.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn root_need_not_be_vertex_zero() {
        let g = RootedGraph::new(Multigraph::from_pairs(3, [(0, 2), (1, 2)]).unwrap(), 2).unwrap();
        let u = rooted_union(&[g], 2).unwrap();
        assert_eq!(u.root(), 0);
        assert!((b(&u) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixing_hits_the_linear_interpolation() {
        let tri = build_star_triangles_leaves(100, 150).unwrap();
        let mixed = mix_with_leaves_to_alpha(&tri, 2.5).unwrap();
        assert!((mixed.alpha() - 2.5).abs() < 1e-12);
        assert!((b(&mixed) - (5.0 - 2.5) / 3.0).abs() < 1e-12);
        assert!(mix_with_leaves_to_alpha(&tri, 2.0).is_err());
        assert_eq!(leaves_for_alpha(&tri, 3.5).unwrap(), 0);
    }
}
