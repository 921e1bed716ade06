//! Canonical labels for small multigraphs.
//!
//! Individualisation-refinement: colour refinement (counting
//! multiplicities) splits the vertex set into cells, the first non-trivial
//! cell is branched on, and the label is the lexicographically least
//! upper-triangular multiplicity matrix over all leaves of the search tree.
//! Automorphisms found along the way prune sibling branches.

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

pub const CANONICAL_VERTEX_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel {
    pub n: usize,
    pub colors: Vec<u32>,
    pub matrix: Vec<u32>,
}

/// Label equal for two multigraphs exactly when they are isomorphic.
pub fn canonical_form(g: &Multigraph) -> Result<CanonicalLabel> {
    canonical_form_colored(g, &vec![0; g.n_vertices()])
}

/// Isomorphism label respecting a vertex colouring (e.g. a marked root).
pub fn canonical_form_colored(g: &Multigraph, colors: &[u32]) -> Result<CanonicalLabel> {
    canonical_order(g, colors).map(|(label, _)| label)
}

/// Label plus a canonical ordering: `order[i]` is the vertex placed at
/// position `i`.
pub fn canonical_order(g: &Multigraph, colors: &[u32]) -> Result<(CanonicalLabel, Vec<usize>)> {
    let n = g.n_vertices();
    if n > CANONICAL_VERTEX_LIMIT {
        return Err(Error::SizeLimit {
            what: "canonical form vertex count",
            limit: CANONICAL_VERTEX_LIMIT,
            got: n,
        });
    }
    if colors.len() != n {
        return Err(Error::InvalidParameter("colouring length differs from vertex count".into()));
    }
    let mut adj = vec![0u32; n * n];
    for (u, v, k) in g.edges() {
        adj[u * n + v] = k;
        adj[v * n + u] = k;
    }
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| (colors[v], v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_color {
        match cells.last_mut() {
            Some(cell) if colors[cell[0]] == colors[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut search = Search {
        n,
        adj,
        best: None,
        automorphisms: Vec::new(),
    };
    search.descend(cells, &mut Vec::new());
    let (matrix, order) = search.best.expect("search visits at least one leaf");
    let label = CanonicalLabel {
        n,
        colors: order.iter().map(|&v| colors[v]).collect(),
        matrix,
    };
    Ok((label, order))
}

struct Search {
    n: usize,
    adj: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.n;
        loop {
            let mut cell_of = vec![0usize; n];
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let k = cells.len();
            let mut next = Vec::with_capacity(n);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u32; k];
                        for w in 0..n {
                            sig[cell_of[w]] += self.adj[v * n + w];
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target].clone() {
            if tried.iter().any(|&u| self.same_orbit(u, v, fixed)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&w| w != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            fixed.push(v);
            self.descend(child, fixed);
            fixed.pop();
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let n = self.n;
        let mut matrix = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                matrix.push(self.adj[order[i] * n + order[j]]);
            }
        }
        match &self.best {
            Some((best, best_order)) if *best == matrix => {
                let mut perm = vec![0; n];
                for i in 0..n {
                    perm[order[i]] = best_order[i];
                }
                self.automorphisms.push(perm);
            }
            Some((best, _)) if *best < matrix => {}
            _ => self.best = Some((matrix, order)),
        }
    }

    /// Whether `u` and `v` share an orbit of the group generated by the
    /// known automorphisms that fix every vertex in `fixed`.
    fn same_orbit(&self, u: usize, v: usize, fixed: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for perm in &self.automorphisms {
            if fixed.iter().any(|&f| perm[f] != f) {
                continue;
            }
            for (a, &b) in perm.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        find(&mut parent, u) == find(&mut parent, v)
    }
}
