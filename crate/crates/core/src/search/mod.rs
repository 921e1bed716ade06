//! Exhaustive search over small connected multigraphs, and the
//! contract-and-leaf improvement move.

pub mod claims;
pub mod local;

pub use claims::{
    best_cycle_with_leaves, check_cycle_crossover, check_queen_bee, check_rooted_triangle, check_star_optimal,
    check_unicyclic_optimum, nonconvexity_from, nonconvexity_from_point, nonconvexity_witness, verify_small_claims,
    ClaimCheck, NonConvexityWitness, SmallClaimsReport,
};
pub use local::{local_improve, LocalImprovement};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_form_colored, CanonicalLabel};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, RootedGraph, Vertex};
use crate::resistance::{resistance_summary, rooted_summary};

/// Largest total vertex count (root included) the search accepts.
pub const SEARCH_VERTEX_LIMIT: usize = 8;
pub const SEARCH_EDGE_LIMIT: usize = 12;
/// Values within this distance of the optimum count as ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    A,
    B,
    #[serde(rename = "B_queen_bee")]
    BQueenBee,
}

impl Objective {
    pub fn is_rooted(self) -> bool {
        !matches!(self, Objective::A)
    }

    /// Vertex count including the root.
    fn total_vertices(self, n: usize) -> usize {
        if self.is_rooted() {
            n + 1
        } else {
            n
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::A => "A",
            Objective::B => "B",
            Objective::BQueenBee => "B_queen_bee",
        })
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Objective::A),
            "B" | "b" => Ok(Objective::B),
            "B_queen_bee" | "b_queen_bee" | "queen_bee" => Ok(Objective::BQueenBee),
            _ => Err(Error::InvalidParameter(format!("unknown objective `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub n_vertices: usize,
    pub root: Option<Vertex>,
    pub edges: Vec<(Vertex, Vertex, u32)>,
    pub value: f64,
}

impl Witness {
    pub fn graph(&self) -> Multigraph {
        Multigraph::from_edges(self.n_vertices, self.edges.iter().copied()).expect("witness edges are valid")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub objective: Objective,
    /// Vertex count, not counting the root for rooted objectives.
    pub n: usize,
    pub m: usize,
    pub mult_cap: u32,
    pub best_value: f64,
    pub witnesses: Vec<Witness>,
    /// Isomorphism classes evaluated.
    pub explored: usize,
}

/// One finished stage of the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub vertices: usize,
    pub edges: usize,
    pub classes: usize,
}

type Classes = BTreeMap<CanonicalLabel, Multigraph>;

struct Enumerator {
    root: Option<Vertex>,
    cap: u32,
}

impl Enumerator {
    fn colors(&self, n: usize) -> Vec<u32> {
        (0..n).map(|v| u32::from(Some(v) == self.root)).collect()
    }

    fn insert_all(&self, candidates: Vec<Multigraph>) -> Result<Classes> {
        let labelled: Vec<(CanonicalLabel, Multigraph)> = candidates
            .into_par_iter()
            .map(|g| canonical_form_colored(&g, &self.colors(g.n_vertices())).map(|l| (l, g)))
            .collect::<Result<_>>()?;
        let mut out = Classes::new();
        for (label, g) in labelled {
            out.entry(label).or_insert(g);
        }
        Ok(out)
    }

    /// Trees on `n` vertices up to isomorphism, grown leaf by leaf.
    fn trees(&self, n: usize, progress: &mut dyn FnMut(Progress)) -> Result<Classes> {
        let mut level = self.insert_all(vec![Multigraph::new(1)])?;
        for size in 2..=n {
            let mut next = Vec::new();
            for g in level.values() {
                for v in 0..g.n_vertices() {
                    let mut h = g.clone();
                    let leaf = h.add_vertices(1);
                    h.add_edge(v, leaf, 1)?;
                    next.push(h);
                }
            }
            level = self.insert_all(next)?;
            progress(Progress {
                vertices: size,
                edges: size - 1,
                classes: level.len(),
            });
        }
        Ok(level)
    }

    /// Every way of adding one edge, up to isomorphism.
    fn augment(&self, level: &Classes) -> Result<Classes> {
        let mut next = Vec::new();
        for g in level.values() {
            let n = g.n_vertices();
            for u in 0..n {
                for v in u + 1..n {
                    if g.multiplicity(u, v) < self.cap {
                        let mut h = g.clone();
                        h.add_edge(u, v, 1)?;
                        next.push(h);
                    }
                }
            }
        }
        self.insert_all(next)
    }
}

fn check_limits(objective: Objective, n: usize, m: usize, mult_cap: u32) -> Result<usize> {
    let total = objective.total_vertices(n);
    if total > SEARCH_VERTEX_LIMIT {
        return Err(Error::SizeLimit {
            what: "search vertex count (root included)",
            limit: SEARCH_VERTEX_LIMIT,
            got: total,
        });
    }
    if m > SEARCH_EDGE_LIMIT {
        return Err(Error::SizeLimit {
            what: "search edge count",
            limit: SEARCH_EDGE_LIMIT,
            got: m,
        });
    }
    if mult_cap == 0 {
        return Err(Error::InvalidParameter("multiplicity cap must be at least 1".into()));
    }
    if n == 0 || (!objective.is_rooted() && n < 2) {
        return Err(Error::InvalidParameter(format!("no graphs of this kind on {n} vertices")));
    }
    Ok(total)
}

/// All connected multigraphs with the given size and multiplicity cap, up
/// to isomorphism; rooted objectives put the root at vertex 0 and respect
/// it. Queen-Bee classes are exactly those containing the star from the
/// root.
pub fn enumerate_classes(
    objective: Objective,
    n: usize,
    m: usize,
    mult_cap: u32,
    progress: &mut dyn FnMut(Progress),
) -> Result<Vec<Multigraph>> {
    let total = check_limits(objective, n, m, mult_cap)?;
    if m + 1 < total {
        return Ok(Vec::new());
    }
    let e = Enumerator {
        root: objective.is_rooted().then_some(0),
        cap: mult_cap,
    };
    let (mut level, mut edges) = match objective {
        Objective::BQueenBee => {
            if m < n {
                return Ok(Vec::new());
            }
            let star = Multigraph::from_pairs(total, (1..total).map(|v| (0, v)))?;
            (e.insert_all(vec![star])?, n)
        }
        _ => (e.trees(total, progress)?, total - 1),
    };
    while edges < m {
        level = e.augment(&level)?;
        edges += 1;
        progress(Progress {
            vertices: total,
            edges,
            classes: level.len(),
        });
    }
    Ok(level.into_values().collect())
}

fn evaluate(objective: Objective, g: &Multigraph) -> Result<f64> {
    if objective.is_rooted() {
        Ok(rooted_summary(&RootedGraph::new(g.clone(), 0)?)?.b)
    } else {
        Ok(resistance_summary(g)?.a)
    }
}

fn collect(objective: Objective, n: usize, m: usize, mult_cap: u32, graphs: Vec<Multigraph>) -> Result<SearchResult> {
    let values: Vec<f64> = graphs.par_iter().map(|g| evaluate(objective, g)).collect::<Result<_>>()?;
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return Err(Error::Infeasible(format!(
            "no connected graph for {objective} with n={n}, m={m}, multiplicity cap {mult_cap}"
        )));
    }
    let witnesses = graphs
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v <= best + TIE_TOLERANCE)
        .map(|(g, &value)| Witness {
            n_vertices: g.n_vertices(),
            root: objective.is_rooted().then_some(0),
            edges: g.edges().collect(),
            value,
        })
        .collect();
    Ok(SearchResult {
        objective,
        n,
        m,
        mult_cap,
        best_value: best,
        witnesses,
        explored: graphs.len(),
    })
}

/// Minimum of the objective over connected multigraphs with `n` vertices
/// (non-root vertices for rooted objectives), exactly `m` edges and edge
/// multiplicities at most `mult_cap`.
pub fn enumerate_optimal(objective: Objective, n: usize, m: usize, mult_cap: u32) -> Result<SearchResult> {
    enumerate_optimal_with_progress(objective, n, m, mult_cap, &mut |_| {})
}

pub fn enumerate_optimal_with_progress(
    objective: Objective,
    n: usize,
    m: usize,
    mult_cap: u32,
    progress: &mut dyn FnMut(Progress),
) -> Result<SearchResult> {
    let graphs = enumerate_classes(objective, n, m, mult_cap, progress)?;
    collect(objective, n, m, mult_cap, graphs)
}

/// Labelled enumeration without isomorphism reduction: every multiplicity
/// vector over the vertex pairs. Only for tiny cases.
pub fn enumerate_labelled(objective: Objective, n: usize, m: usize, mult_cap: u32) -> Result<SearchResult> {
    let total = check_limits(objective, n, m, mult_cap)?;
    if total > 5 {
        return Err(Error::SizeLimit {
            what: "labelled enumeration vertex count",
            limit: 5,
            got: total,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..total).flat_map(|u| (u + 1..total).map(move |v| (u, v))).collect();
    let mut graphs = Vec::new();
    let mut mult = vec![0u32; pairs.len()];
    fn rec(
        i: usize,
        left: usize,
        cap: u32,
        pairs: &[(usize, usize)],
        mult: &mut [u32],
        total: usize,
        out: &mut Vec<Multigraph>,
    ) {
        if i == pairs.len() {
            if left == 0 {
                let g = Multigraph::from_edges(
                    total,
                    pairs.iter().zip(mult.iter()).filter(|(_, &k)| k > 0).map(|(&(u, v), &k)| (u, v, k)),
                )
                .expect("valid pairs");
                if g.is_connected() {
                    out.push(g);
                }
            }
            return;
        }
        for k in 0..=cap.min(left as u32) {
            mult[i] = k;
            rec(i + 1, left - k as usize, cap, pairs, mult, total, out);
        }
        mult[i] = 0;
    }
    rec(0, m, mult_cap, &pairs, &mut mult, total, &mut graphs);
    if objective == Objective::BQueenBee {
        graphs.retain(|g| (1..total).all(|v| g.multiplicity(0, v) > 0));
    }
    collect(objective, n, m, mult_cap, graphs)
}
