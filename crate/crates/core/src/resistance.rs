//! Effective resistances and the averages built from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, RootedGraph, Vertex};
use crate::solver::{GroundedLaplacian, Method};

/// Largest tolerated gap between `R(x, y)` and `R(y, x)`, relative to
/// `max(1, R)`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-8;

/// Effective resistance; `Infinite` when no path joins the terminals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Resistance {
    Finite(f64),
    Infinite,
}

impl Resistance {
    pub fn finite(self) -> Option<f64> {
        match self {
            Resistance::Finite(r) => Some(r),
            Resistance::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Resistance::Infinite)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResistanceSummary {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub pairwise_total: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "A_prime")]
    pub a_prime: f64,
    pub max_pair_resistance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootedSummary {
    pub n_nonroot: usize,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "R_tot")]
    pub r_tot: f64,
    pub per_vertex: BTreeMap<Vertex, f64>,
}

pub(crate) fn unit_conductances(g: &Multigraph) -> Vec<(usize, usize, f64)> {
    g.edges().map(|(u, v, k)| (u, v, k as f64)).collect()
}

fn check_vertex(n: usize, v: Vertex) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::InvalidVertex { vertex: v, n })
    }
}

/// Component label of every vertex of a conductance network.
fn component_labels(n: usize, edges: &[(usize, usize, f64)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v, c) in edges {
        if c > 0.0 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

fn network_pair_resistance(
    n: usize,
    edges: &[(usize, usize, f64)],
    x: Vertex,
    y: Vertex,
    method: Method,
) -> Result<Resistance> {
    check_vertex(n, x)?;
    check_vertex(n, y)?;
    if x == y {
        return Ok(Resistance::Finite(0.0));
    }
    let labels = component_labels(n, edges);
    if labels[x] != labels[y] {
        return Ok(Resistance::Infinite);
    }
    // Restrict to the component so the grounded system is nonsingular.
    let members: Vec<usize> = (0..n).filter(|&v| labels[v] == labels[x]).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let sub: Vec<(usize, usize, f64)> = edges
        .iter()
        .filter(|e| local[e.0] != usize::MAX && e.2 > 0.0)
        .map(|&(u, v, c)| (local[u], local[v], c))
        .collect();
    let k = members.len();
    let forward = GroundedLaplacian::new(k, &sub, local[y], method)?.unit_potentials(local[x])?[local[x]];
    let backward = GroundedLaplacian::new(k, &sub, local[x], method)?.unit_potentials(local[y])?[local[y]];
    if (forward - backward).abs() > SYMMETRY_TOLERANCE * forward.abs().max(1.0) {
        return Err(Error::NumericalAsymmetry { forward, backward });
    }
    Ok(Resistance::Finite(0.5 * (forward + backward)))
}

/// Effective resistance between `x` and `y` (0 when `x == y`).
pub fn pair_resistance(g: &Multigraph, x: Vertex, y: Vertex) -> Result<Resistance> {
    pair_resistance_with(g, x, y, Method::Auto)
}

pub fn pair_resistance_with(g: &Multigraph, x: Vertex, y: Vertex, method: Method) -> Result<Resistance> {
    network_pair_resistance(g.n_vertices(), &unit_conductances(g), x, y, method)
}

fn network_totals(n: usize, edges: &[(usize, usize, f64)], method: Method) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidParameter("average resistance needs at least two vertices".into()));
    }
    let labels = component_labels(n, edges);
    if labels.iter().any(|&l| l != labels[0]) {
        return Err(Error::Disconnected);
    }
    GroundedLaplacian::new(n, edges, n - 1, method)?.pairwise_total_and_max()
}

/// `A` of the graph underlying `g` (the root counted as an ordinary vertex),
/// given `R(x, ρ)` for every vertex. Uses `n·tr(M) − 1ᵀM1` with the
/// Laplacian grounded at the root, so only one further solve is needed.
pub fn average_resistance_via_root(g: &RootedGraph, root_res: &[f64]) -> Result<f64> {
    let graph = g.graph();
    let n = graph.n_vertices();
    if n < 2 {
        return Err(Error::InvalidParameter("average resistance needs at least two vertices".into()));
    }
    if root_res.len() != n {
        return Err(Error::InvalidParameter(format!("{} root resistances for {n} vertices", root_res.len())));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let lap = GroundedLaplacian::new(n, &unit_conductances(graph), g.root(), Method::Auto)?;
    let sum: f64 = lap.potentials(&vec![1.0; n])?.iter().sum();
    let trace: f64 = root_res.iter().sum();
    let nf = n as f64;
    Ok((nf * trace - sum) / (nf * (nf - 1.0) / 2.0))
}

/// Every pairwise resistance, aggregated. Disconnected input yields
/// [`Error::Disconnected`].
pub fn resistance_summary(g: &Multigraph) -> Result<ResistanceSummary> {
    resistance_summary_with(g, Method::Auto)
}

pub fn resistance_summary_with(g: &Multigraph, method: Method) -> Result<ResistanceSummary> {
    let n = g.n_vertices();
    let (total, max) = network_totals(n, &unit_conductances(g), method)?;
    let nf = n as f64;
    Ok(ResistanceSummary {
        n,
        m: g.edge_count(),
        alpha: g.average_degree(),
        pairwise_total: total,
        a: total / (nf * (nf - 1.0) / 2.0),
        a_prime: 2.0 * total / (nf * nf),
        max_pair_resistance: max,
    })
}

/// `R(x, ρ)` for every vertex (0 at the root). Each component of `G − ρ`
/// is solved separately.
pub fn root_resistances(g: &RootedGraph) -> Result<Vec<f64>> {
    root_resistances_with(g, Method::Auto)
}

pub fn root_resistances_with(g: &RootedGraph, method: Method) -> Result<Vec<f64>> {
    root_resistance_profile_with(g, method)?
        .into_iter()
        .map(|r| r.finite().ok_or(Error::Disconnected))
        .collect()
}

/// Like [`root_resistances`], but vertices cut off from the root are
/// reported as [`Resistance::Infinite`] instead of failing.
pub fn root_resistance_profile(g: &RootedGraph) -> Result<Vec<Resistance>> {
    root_resistance_profile_with(g, Method::Auto)
}

pub fn root_resistance_profile_with(g: &RootedGraph, method: Method) -> Result<Vec<Resistance>> {
    let graph = g.graph();
    let n = graph.n_vertices();
    let root = g.root();
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let adj = graph.adjacency();
    for s in 0..n {
        if s == root || comp[s] != usize::MAX {
            continue;
        }
        let id = members.len();
        comp[s] = id;
        let mut list = vec![s];
        let mut i = 0;
        while i < list.len() {
            let u = list[i];
            i += 1;
            for &(w, _) in &adj[u] {
                if w != root && comp[w] == usize::MAX {
                    comp[w] = id;
                    list.push(w);
                }
            }
        }
        members.push(list);
    }
    let mut local = vec![0usize; n];
    for list in &members {
        for (i, &v) in list.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut edges: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); members.len()];
    for (u, v, k) in graph.edges() {
        let c = if u == root { comp[v] } else { comp[u] };
        let lu = if u == root { members[c].len() } else { local[u] };
        let lv = if v == root { members[c].len() } else { local[v] };
        edges[c].push((lu, lv, k as f64));
    }
    let mut out = vec![Resistance::Finite(0.0); n];
    for (c, list) in members.iter().enumerate() {
        let k = list.len();
        if !edges[c].iter().any(|&(u, v, _)| u == k || v == k) {
            for &v in list {
                out[v] = Resistance::Infinite;
            }
            continue;
        }
        let r = if k == 1 {
            // A single vertex joined only to the root.
            vec![1.0 / edges[c].iter().map(|e| e.2).sum::<f64>()]
        } else {
            GroundedLaplacian::new(k + 1, &edges[c], k, method)?.resistances_to_ground()?
        };
        for (i, &v) in list.iter().enumerate() {
            out[v] = Resistance::Finite(r[i]);
        }
    }
    Ok(out)
}

pub fn rooted_summary(g: &RootedGraph) -> Result<RootedSummary> {
    rooted_summary_with(g, Method::Auto)
}

pub fn rooted_summary_with(g: &RootedGraph, method: Method) -> Result<RootedSummary> {
    let n_nonroot = g.n_nonroot();
    if n_nonroot == 0 {
        return Err(Error::InvalidParameter("rooted graph has no non-root vertex".into()));
    }
    let r = root_resistances_with(g, method)?;
    let per_vertex: BTreeMap<Vertex, f64> = g.non_root_vertices().map(|v| (v, r[v])).collect();
    let r_tot: f64 = per_vertex.values().sum();
    Ok(RootedSummary {
        n_nonroot,
        b: r_tot / n_nonroot as f64,
        r_tot,
        per_vertex,
    })
}

/// Nonnegative conductances on vertex pairs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightedNetwork {
    n: usize,
    conductance: BTreeMap<(Vertex, Vertex), f64>,
}

impl WeightedNetwork {
    pub fn new(n: usize) -> Self {
        WeightedNetwork {
            n,
            conductance: BTreeMap::new(),
        }
    }

    pub fn from_multigraph(g: &Multigraph) -> Self {
        let mut w = WeightedNetwork::new(g.n_vertices());
        for (u, v, k) in g.edges() {
            w.conductance.insert((u, v), k as f64);
        }
        w
    }

    /// Uniform conductance on every pair.
    pub fn complete(n: usize, c: f64) -> Result<Self> {
        let mut w = WeightedNetwork::new(n);
        for u in 0..n {
            for v in u + 1..n {
                w.set_conductance(u, v, c)?;
            }
        }
        Ok(w)
    }

    pub fn set_conductance(&mut self, u: Vertex, v: Vertex, c: f64) -> Result<()> {
        check_vertex(self.n, u)?;
        check_vertex(self.n, v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("conductance {c} must be finite and nonnegative")));
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if c == 0.0 {
            self.conductance.remove(&key);
        } else {
            self.conductance.insert(key, c);
        }
        Ok(())
    }

    pub fn conductance(&self, u: Vertex, v: Vertex) -> f64 {
        let key = if u < v { (u, v) } else { (v, u) };
        self.conductance.get(&key).copied().unwrap_or(0.0)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// `Σ c_uv`, the quantity compared against an edge budget.
    pub fn total_conductance(&self) -> f64 {
        self.conductance.values().sum()
    }

    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.conductance.iter().map(|(&(u, v), &c)| (u, v, c)).collect()
    }
}

pub fn weighted_pair_resistance(w: &WeightedNetwork, x: Vertex, y: Vertex) -> Result<Resistance> {
    network_pair_resistance(w.n, &w.edges(), x, y, Method::Auto)
}

/// Mean resistance over unordered pairs of a weighted network.
pub fn weighted_average_resistance(w: &WeightedNetwork) -> Result<f64> {
    let n = w.n as f64;
    let (total, _) = network_totals(w.n, &w.edges(), Method::Auto)?;
    Ok(total / (n * (n - 1.0) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    fn r(g: &Multigraph, x: usize, y: usize) -> f64 {
        pair_resistance(g, x, y).unwrap().finite().unwrap()
    }

    #[test]
    fn textbook_pairs() {
        let path = Multigraph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(close(r(&path, 0, 2), 2.0));
        let k3 = Multigraph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(close(r(&k3, 0, 1), 2.0 / 3.0));
        let c4 = Multigraph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(close(r(&c4, 0, 2), 1.0));
        assert_eq!(pair_resistance(&c4, 2, 2).unwrap(), Resistance::Finite(0.0));
    }

    #[test]
    fn average_through_root_matches_summary() {
        let g = Multigraph::from_pairs(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 3), (2, 4)]).unwrap();
        for root in [0, 4] {
            let rg = RootedGraph::new(g.clone(), root).unwrap();
            let via = average_resistance_via_root(&rg, &root_resistances(&rg).unwrap()).unwrap();
            assert!(close(via, resistance_summary(&g).unwrap().a));
        }
    }

    #[test]
    fn disconnected_pair_is_infinite() {
        let g = Multigraph::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        assert!(pair_resistance(&g, 0, 3).unwrap().is_infinite());
        assert!(close(r(&g, 2, 3), 1.0));
        assert!(matches!(resistance_summary(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn summaries() {
        let star = Multigraph::from_pairs(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = resistance_summary(&star).unwrap();
        assert!(close(s.a, 1.5));
        assert!(close(s.pairwise_total, 9.0));
        assert!(close(s.max_pair_resistance, 2.0));
        assert!(close(s.a, s.a_prime * 4.0 / 3.0));
        let k3 = Multigraph::from_pairs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = resistance_summary(&k3).unwrap();
        assert!(close(s.pairwise_total, 2.0) && close(s.a, 2.0 / 3.0));
        let edge = Multigraph::from_pairs(2, [(0, 1)]).unwrap();
        assert!(close(resistance_summary(&edge).unwrap().a, 1.0));
    }

    #[test]
    fn summary_json_field_names() {
        let edge = Multigraph::from_pairs(2, [(0, 1)]).unwrap();
        let v = serde_json::to_value(resistance_summary(&edge).unwrap()).unwrap();
        for key in ["n", "m", "alpha", "pairwise_total", "A", "A_prime", "max_pair_resistance"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let rooted = RootedGraph::new(edge, 0).unwrap();
        let v = serde_json::to_value(rooted_summary(&rooted).unwrap()).unwrap();
        for key in ["n_nonroot", "B", "R_tot", "per_vertex"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn rooted_examples() {
        let star = Multigraph::from_pairs(5, (1..5).map(|i| (0, i))).unwrap();
        let s = rooted_summary(&RootedGraph::new(star, 0).unwrap()).unwrap();
        assert!(close(s.b, 1.0));
        // Root 0 in the middle of a path 1 - 0 - 2 - 3.
        let g = Multigraph::from_pairs(4, [(1, 0), (0, 2), (2, 3)]).unwrap();
        let s = rooted_summary(&RootedGraph::new(g, 0).unwrap()).unwrap();
        assert!(close(s.r_tot, 4.0));
        let lonely = RootedGraph::new(Multigraph::from_pairs(3, [(0, 1)]).unwrap(), 0).unwrap();
        assert!(matches!(rooted_summary(&lonely), Err(Error::Disconnected)));
    }

    #[test]
    fn weighted_examples() {
        let mut w = WeightedNetwork::new(2);
        w.set_conductance(0, 1, 4.0).unwrap();
        assert!(close(weighted_pair_resistance(&w, 0, 1).unwrap().finite().unwrap(), 0.25));
        let mut w = WeightedNetwork::new(3);
        w.set_conductance(0, 1, 1.0).unwrap();
        w.set_conductance(1, 2, 2.0).unwrap();
        assert!(close(weighted_pair_resistance(&w, 0, 2).unwrap().finite().unwrap(), 1.5));
        let w = WeightedNetwork::complete(4, 1.0).unwrap();
        assert!(close(weighted_average_resistance(&w).unwrap(), 0.5));
        assert!(WeightedNetwork::new(2).set_conductance(0, 1, -1.0).is_err());
    }

    #[test]
    fn dense_and_iterative_agree() {
        let mut pairs = Vec::new();
        for i in 0..12 {
            pairs.push((i, (i + 1) % 12));
            pairs.push((i, (i + 5) % 12));
        }
        let g = Multigraph::from_pairs(12, pairs).unwrap();
        let d = resistance_summary_with(&g, Method::Dense).unwrap();
        let it = resistance_summary_with(&g, Method::Iterative).unwrap();
        assert!((d.pairwise_total - it.pairwise_total).abs() < 1e-7);
        assert!((d.max_pair_resistance - it.max_pair_resistance).abs() < 1e-8);
        let rg = RootedGraph::new(g, 3).unwrap();
        let a = root_resistances_with(&rg, Method::Dense).unwrap();
        let b = root_resistances_with(&rg, Method::Iterative).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-8);
        }
    }
}
