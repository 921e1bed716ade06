//! Currents from spanning-tree counts.
//!
//! For a unit `s → t` flow, the current through the oriented pair `xy` is
//! `(N(s,t,x,y) − N(s,t,y,x)) / N`, where `N` counts spanning trees and
//! `N(s,t,x,y)` those whose `s`–`t` path traverses `xy` in that direction.
//! Parallel copies are distinct edges, so a tree using a pair of
//! multiplicity `k` counts `k` times per other choice.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};

pub const SPANNING_VERTEX_LIMIT: usize = 9;

/// Calls `visit(pairs, weight)` for every spanning tree on distinct pairs;
/// `weight` is the product of multiplicities.
fn for_each_spanning_tree<F: FnMut(&[(usize, usize)], u64)>(g: &Multigraph, mut visit: F) {
    let n = g.n_vertices();
    let pairs: Vec<(usize, usize, u32)> = g.edges().collect();
    let mut chosen = Vec::with_capacity(n);
    fn rec<F: FnMut(&[(usize, usize)], u64)>(
        pairs: &[(usize, usize, u32)],
        i: usize,
        n: usize,
        chosen: &mut Vec<(usize, usize)>,
        weight: u64,
        visit: &mut F,
    ) {
        if chosen.len() + 1 == n {
            visit(chosen, weight);
            return;
        }
        if pairs.len() - i < n - 1 - chosen.len() {
            return;
        }
        let (u, v, k) = pairs[i];
        if !connected_in(chosen, n, u, v) {
            chosen.push((u, v));
            rec(pairs, i + 1, n, chosen, weight * k as u64, visit);
            chosen.pop();
        }
        rec(pairs, i + 1, n, chosen, weight, visit);
    }
    if n <= 1 {
        visit(&[], 1);
        return;
    }
    rec(&pairs, 0, n, &mut chosen, 1, &mut visit);
}

fn connected_in(edges: &[(usize, usize)], n: usize, a: usize, b: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru] = rv;
    }
    find(&mut parent, a) == find(&mut parent, b)
}

fn check_size(g: &Multigraph) -> Result<()> {
    if g.n_vertices() > SPANNING_VERTEX_LIMIT {
        return Err(Error::SizeLimit {
            what: "spanning tree enumeration",
            limit: SPANNING_VERTEX_LIMIT,
            got: g.n_vertices(),
        });
    }
    Ok(())
}

/// Number of spanning trees, parallel copies counted separately.
pub fn spanning_tree_count(g: &Multigraph) -> Result<u64> {
    check_size(g)?;
    let mut total = 0;
    for_each_spanning_tree(g, |_, w| total += w);
    Ok(total)
}

/// Unique `s`–`t` path in a tree given by its pairs.
fn tree_path(tree: &[(usize, usize)], n: usize, s: usize, t: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in tree {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut parent = vec![usize::MAX; n];
    parent[s] = s;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Total current on every adjacent pair `(u, v)`, `u < v`, positive from
/// `u` to `v`, for a unit flow from `s` to `t`.
pub fn spanning_tree_currents(g: &Multigraph, s: Vertex, t: Vertex) -> Result<BTreeMap<(Vertex, Vertex), f64>> {
    check_size(g)?;
    let n = g.n_vertices();
    for v in [s, t] {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
    }
    let mut signed: BTreeMap<(Vertex, Vertex), i64> = g.edges().map(|(u, v, _)| ((u, v), 0)).collect();
    let mut total: u64 = 0;
    for_each_spanning_tree(g, |tree, w| {
        total += w;
        if s == t {
            return;
        }
        let path = tree_path(tree, n, s, t);
        for step in path.windows(2) {
            let (a, b) = (step[0], step[1]);
            if a < b {
                *signed.get_mut(&(a, b)).unwrap() += w as i64;
            } else {
                *signed.get_mut(&(b, a)).unwrap() -= w as i64;
            }
        }
    });
    if total == 0 {
        return Err(Error::Disconnected);
    }
    Ok(signed
        .into_iter()
        .map(|(k, c)| (k, c as f64 / total as f64))
        .collect())
}

/// Current through the oriented pair `x → y` (all parallel copies).
pub fn current_via_spanning_trees(g: &Multigraph, s: Vertex, t: Vertex, edge: (Vertex, Vertex)) -> Result<f64> {
    let (x, y) = edge;
    let currents = spanning_tree_currents(g, s, t)?;
    let key = if x < y { (x, y) } else { (y, x) };
    let c = currents.get(&key).copied().unwrap_or(0.0);
    Ok(if x < y { c } else { -c })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let k3 = Multigraph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(spanning_tree_count(&k3).unwrap(), 3);
        let k4 = Multigraph::from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(spanning_tree_count(&k4).unwrap(), 16);
        let fat = Multigraph::from_edges(3, [(0, 1, 2), (1, 2, 3)]).unwrap();
        assert_eq!(spanning_tree_count(&fat).unwrap(), 6);
    }

    #[test]
    fn currents() {
        let edge = Multigraph::from_pairs(2, [(0, 1)]).unwrap();
        assert_eq!(current_via_spanning_trees(&edge, 0, 1, (0, 1)).unwrap(), 1.0);
        assert_eq!(current_via_spanning_trees(&edge, 0, 1, (1, 0)).unwrap(), -1.0);
        let k3 = Multigraph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!((current_via_spanning_trees(&k3, 0, 1, (0, 1)).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((current_via_spanning_trees(&k3, 0, 1, (2, 1)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn size_limit() {
        assert!(spanning_tree_count(&Multigraph::new(10)).is_err());
    }
}
