//! Unit-resistance multigraphs and the handful of structural queries the
//! rest of the crate needs: degrees, connectivity, girth, vertex
//! identification, and the contract-and-add-leaf move on rooted graphs.
//!
//! Edges are stored as a map from an unordered pair `(u, v)` with `u < v`
//! to a positive multiplicity. Self-loops are rejected: they never carry
//! current, so nothing in this crate needs them.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<(Vertex, Vertex), u32>,
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u32)>,
    {
        let mut g = Multigraph::new(n);
        for (u, v, k) in edges {
            g.add_edge(u, v, k)?;
        }
        Ok(g)
    }

    /// Simple graph from a list of pairs (repeated pairs accumulate).
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_edges(n, pairs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Adds `mult` parallel copies of the edge `uv`.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, mult: u32) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if mult == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        *self.edges.entry(ordered(u, v)).or_insert(0) += mult;
        Ok(())
    }

    /// Removes up to `mult` copies of `uv`; returns how many were removed.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex, mult: u32) -> u32 {
        let key = ordered(u, v);
        match self.edges.get_mut(&key) {
            Some(k) if *k > mult => {
                *k -= mult;
                mult
            }
            Some(_) => self.edges.remove(&key).unwrap_or(0),
            None => 0,
        }
    }

    /// Appends `count` isolated vertices and returns the id of the first.
    pub fn add_vertices(&mut self, count: usize) -> Vertex {
        let first = self.n;
        self.n += count;
        first
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().map(|&k| k as usize).sum()
    }

    /// Number of distinct adjacent pairs.
    pub fn pair_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        if u == v {
            return 0;
        }
        self.edges.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    /// Edges as `(u, v, multiplicity)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &k)| (u, v, k))
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.edges.values().copied().max().unwrap_or(0)
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self
            .edges()
            .filter(|&(a, b, _)| a == v || b == v)
            .map(|(_, _, k)| k as usize)
            .sum())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (u, v, k) in self.edges() {
            d[u] += k as usize;
            d[v] += k as usize;
        }
        d
    }

    /// `2m / n`.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.n as f64
    }

    /// Neighbour lists `(neighbour, multiplicity)`, sorted by neighbour.
    pub fn adjacency(&self) -> Vec<Vec<(Vertex, u32)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v, k) in self.edges() {
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Length of a shortest cycle; `None` for forests. A pair joined by two
    /// or more parallel edges is a cycle of length 2.
    pub fn girth(&self) -> Option<usize> {
        if self.max_multiplicity() >= 2 {
            return Some(2);
        }
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let limit = best.map(|b| b / 2 + 1).unwrap_or(usize::MAX);
            if let Some(len) = shortest_cycle_from(&adj, s, limit) {
                best = Some(best.map_or(len, |b| b.min(len)));
                if len == 3 {
                    break;
                }
            }
        }
        best
    }

    /// `true` iff every cycle has length at least `k`. Cheaper than
    /// [`Multigraph::girth`] on large sparse graphs because each search is
    /// cut off at depth `k / 2`.
    pub fn girth_at_least(&self, k: usize) -> bool {
        if k <= 2 {
            return true;
        }
        if self.max_multiplicity() >= 2 {
            return false;
        }
        let adj = self.adjacency();
        let depth = k / 2;
        (0..self.n).all(|s| match shortest_cycle_from(&adj, s, depth) {
            Some(len) => len >= k,
            None => true,
        })
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Multigraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_vertex(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Multigraph::from_edges(self.n, self.edges().map(|(u, v, k)| (perm[u], perm[v], k)))
    }

    /// Identifies `b` with `a`. Edges between them vanish (they would be
    /// loops), and vertices above `b` shift down by one.
    pub fn identify(&self, a: Vertex, b: Vertex) -> Result<Multigraph> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Ok(self.clone());
        }
        let relabel = |v: Vertex| {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let mut g = Multigraph::new(self.n - 1);
        for (u, v, k) in self.edges() {
            let (u, v) = (relabel(u), relabel(v));
            if u != v {
                g.add_edge(u, v, k)?;
            }
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Multigraph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let mut g = Multigraph::new(vertices.len());
        for (u, v, k) in self.edges() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.add_edge(index[u], index[v], k)?;
            }
        }
        Ok(g)
    }
}

/// Shortest cycle detected by a BFS from `s` explored to `max_depth`.
/// Every non-tree edge `uw` met lies on a cycle of length at most
/// `dist(u) + dist(w) + 1`; the minimum over all sources is the girth.
fn shortest_cycle_from(adj: &[Vec<(Vertex, u32)>], s: Vertex, max_depth: usize) -> Option<usize> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut best: Option<usize> = None;
    while let Some(u) = queue.pop_front() {
        if dist[u] >= max_depth {
            continue;
        }
        if let Some(b) = best {
            if 2 * dist[u] + 1 >= b {
                break;
            }
        }
        for &(w, _) in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if parent[u] != w {
                let len = dist[u] + dist[w] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

/// A multigraph with a distinguished root vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedGraph {
    graph: Multigraph,
    root: Vertex,
}

/// Where the degree-one vertices of a rooted graph hang.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafReport {
    /// Leaves whose only edge goes to the root.
    pub root_leaves: usize,
    /// Leaves attached to some other vertex.
    pub stray_leaves: Vec<Vertex>,
}

impl RootedGraph {
    pub fn new(graph: Multigraph, root: Vertex) -> Result<Self> {
        graph.check_vertex(root)?;
        Ok(RootedGraph { graph, root })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn into_graph(self) -> Multigraph {
        self.graph
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    /// Number of non-root vertices.
    pub fn n_nonroot(&self) -> usize {
        self.graph.n_vertices() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Average degree in the rooted convention, `2m / n_nonroot`.
    pub fn alpha(&self) -> f64 {
        2.0 * self.edge_count() as f64 / self.n_nonroot() as f64
    }

    /// Multiplicity of the edge from `x` to the root.
    pub fn root_multiplicity(&self, x: Vertex) -> u32 {
        self.graph.multiplicity(x, self.root)
    }

    pub fn non_root_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.graph.n_vertices()).filter(move |&v| v != self.root)
    }

    pub fn leaf_report(&self) -> LeafReport {
        let adj = self.graph.adjacency();
        let mut report = LeafReport::default();
        for x in self.non_root_vertices() {
            if let [(w, 1)] = adj[x][..] {
                if w == self.root {
                    report.root_leaves += 1;
                } else {
                    report.stray_leaves.push(x);
                }
            }
        }
        report
    }

    /// The rooted graph `G⁺/x`: contract one edge at `x`, drop the loops
    /// this creates, then reuse `x` as a fresh leaf on the root. Vertex
    /// count is unchanged and the edge count never grows.
    ///
    /// The contracted edge goes to the neighbour with the smallest
    /// `rank` (typically resistance to the root), ties and the no-rank case
    /// resolved by lowest vertex id.
    pub fn contract_edge_add_leaf(&self, x: Vertex, rank: Option<&[f64]>) -> Result<RootedGraph> {
        self.graph.check_vertex(x)?;
        if x == self.root {
            return Err(Error::RootVertex(x));
        }
        let adj = self.graph.adjacency();
        let neighbours = &adj[x];
        let target = match rank {
            Some(r) => neighbours
                .iter()
                .map(|&(y, _)| y)
                .min_by(|&a, &b| r[a].total_cmp(&r[b]).then(a.cmp(&b))),
            None => neighbours.first().map(|&(y, _)| y),
        }
        .ok_or(Error::IsolatedVertex(x))?;
        self.contract_toward(x, target)
    }

    /// `G⁺/x` contracting specifically the edge `x`–`y` (`y` survives).
    pub fn contract_toward(&self, x: Vertex, y: Vertex) -> Result<RootedGraph> {
        if x == self.root {
            return Err(Error::RootVertex(x));
        }
        if self.graph.multiplicity(x, y) == 0 {
            return Err(Error::InvalidParameter(format!("{x} and {y} are not adjacent")));
        }
        let mut g = Multigraph::new(self.graph.n_vertices());
        for (u, v, k) in self.graph.edges() {
            let u = if u == x { y } else { u };
            let v = if v == x { y } else { v };
            if u != v {
                g.add_edge(u, v, k)?;
            }
        }
        g.add_edge(x, self.root, 1)?;
        RootedGraph::new(g, self.root)
    }
}
