//! Radius-ℓ balls, their resistance to the boundary, and random rootings
//! of a single tree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use crate::resistance::Resistance;

/// The ball of radius `depth` around `center`, known to be a tree.
/// Local vertex `0` is the centre; locals are numbered in BFS order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeBall {
    pub tree: Multigraph,
    pub center: Vertex,
    pub depth: usize,
    /// Global id of each local vertex.
    pub vertices: Vec<Vertex>,
    /// Distance of each local vertex from the centre.
    pub level: Vec<usize>,
}

/// BFS ball around `x`. Fails if the induced subgraph is not a tree.
pub fn extract_ball(g: &Multigraph, x: Vertex, depth: usize) -> Result<TreeBall> {
    let n = g.n_vertices();
    if x >= n {
        return Err(Error::InvalidVertex { vertex: x, n });
    }
    let adj = g.adjacency();
    let mut local = vec![usize::MAX; n];
    let mut vertices = vec![x];
    let mut level = vec![0];
    local[x] = 0;
    let mut i = 0;
    while i < vertices.len() {
        let u = vertices[i];
        if level[i] < depth {
            for &(w, _) in &adj[u] {
                if local[w] == usize::MAX {
                    local[w] = vertices.len();
                    vertices.push(w);
                    level.push(level[i] + 1);
                }
            }
        }
        i += 1;
    }
    let tree = g.induced(&vertices)?;
    if tree.edge_count() + 1 != vertices.len() {
        return Err(Error::GirthTooSmall {
            required: 2 * depth + 2,
            found: tree.girth(),
        });
    }
    Ok(TreeBall {
        tree,
        center: x,
        depth,
        vertices,
        level,
    })
}

/// Conductance from `v` to the boundary through its subtree, evaluated
/// bottom-up. Boundary vertices are perfect conductors; dead ends carry
/// nothing.
fn series_parallel(children: &[Vec<(usize, u32)>], is_boundary: &[bool], extra: &[f64]) -> f64 {
    let n = children.len();
    let mut c = vec![0.0f64; n];
    for v in (0..n).rev() {
        if is_boundary[v] {
            c[v] = f64::INFINITY;
            continue;
        }
        let mut total = extra[v];
        for &(w, k) in &children[v] {
            let k = k as f64;
            // k parallel unit edges in series with the child's subtree.
            total += if c[w].is_infinite() { k } else { 1.0 / (1.0 / k + 1.0 / c[w]) };
        }
        c[v] = total;
    }
    c[0]
}

fn ball_children(ball: &TreeBall) -> Vec<Vec<(usize, u32)>> {
    let mut children = vec![Vec::new(); ball.vertices.len()];
    for (u, v, k) in ball.tree.edges() {
        let (p, c) = if ball.level[u] < ball.level[v] { (u, v) } else { (v, u) };
        children[p].push((c, k));
    }
    children
}

/// `R(x, T)`: resistance from the centre to the depth-ℓ vertices shorted
/// together.
pub fn tree_resistance(ball: &TreeBall) -> Result<Resistance> {
    if ball.vertices.len() <= 1 {
        return Err(Error::DegenerateBall(ball.center));
    }
    let boundary: Vec<bool> = ball.level.iter().map(|&l| l == ball.depth).collect();
    let c = series_parallel(&ball_children(ball), &boundary, &vec![0.0; boundary.len()]);
    Ok(if c > 0.0 { Resistance::Finite(1.0 / c) } else { Resistance::Infinite })
}

/// `R(x, T_x)` for every vertex, with the tree condition checked on each
/// ball. Vertices whose ball never reaches depth ℓ get `f64::INFINITY`.
pub fn ball_resistances(g: &Multigraph, depth: usize) -> Result<Vec<f64>> {
    if depth == 0 {
        return Err(Error::InvalidParameter("ball depth must be positive".into()));
    }
    if g.max_multiplicity() > 1 {
        return Err(Error::GirthTooSmall {
            required: 2 * depth + 2,
            found: Some(2),
        });
    }
    let adj = g.adjacency();
    let n = g.n_vertices();
    let mut seen = vec![usize::MAX; n];
    let mut out = Vec::with_capacity(n);
    let mut order = Vec::new();
    let mut level = Vec::new();
    let mut parent = Vec::new();
    let mut children: Vec<Vec<(usize, u32)>> = Vec::new();
    for x in 0..n {
        order.clear();
        level.clear();
        parent.clear();
        order.push(x);
        level.push(0);
        parent.push(usize::MAX);
        seen[x] = 0;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &(w, _) in &adj[u] {
                let j = seen[w];
                if j < order.len() && order[j] == w {
                    // Already in this ball: only the tree edge to the
                    // parent or to a child discovered from `u` is allowed.
                    if parent[i] != j && parent[j] != i {
                        return Err(Error::GirthTooSmall {
                            required: 2 * depth + 2,
                            found: None,
                        });
                    }
                } else if level[i] < depth {
                    seen[w] = order.len();
                    order.push(w);
                    level.push(level[i] + 1);
                    parent.push(i);
                }
            }
            i += 1;
        }
        if children.len() < order.len() {
            children.resize(order.len(), Vec::new());
        }
        for c in children.iter_mut().take(order.len()) {
            c.clear();
        }
        for j in 1..order.len() {
            children[parent[j]].push((j, 1));
        }
        let boundary: Vec<bool> = level.iter().map(|&l| l == depth).collect();
        let c = series_parallel(&children[..order.len()], &boundary, &vec![0.0; order.len()]);
        out.push(if c > 0.0 { 1.0 / c } else { f64::INFINITY });
        for &v in &order {
            seen[v] = usize::MAX;
        }
    }
    Ok(out)
}

/// `Σ_{k<ℓ} 1/(d (d−1)^k)`, the depth-ℓ ball resistance of a `d`-regular
/// tree.
pub fn regular_tree_resistance(d: usize, depth: usize) -> f64 {
    let d = d as f64;
    (0..depth).map(|k| 1.0 / (d * (d - 1.0).powi(k as i32))).sum()
}

/// The depth-ℓ ball of the infinite `d`-regular tree, centre `0`.
pub fn regular_tree(d: usize, depth: usize) -> Result<TreeBall> {
    let mut pairs = Vec::new();
    let mut level = vec![0];
    let mut frontier = vec![0usize];
    let mut n = 1;
    for l in 0..depth {
        let mut next = Vec::new();
        for &v in &frontier {
            let kids = if l == 0 { d } else { d - 1 };
            for _ in 0..kids {
                pairs.push((v, n));
                level.push(l + 1);
                next.push(n);
                n += 1;
            }
        }
        frontier = next;
    }
    Ok(TreeBall {
        tree: Multigraph::from_pairs(n, pairs)?,
        center: 0,
        depth,
        vertices: (0..n).collect(),
        level,
    })
}

/// `R(x, ρ)` in the tree with `root_edges[v]` parallel edges from each
/// vertex to a separate root, the boundary not shorted. Every branch is a
/// two-terminal network between its top vertex and the root, so series
/// and parallel reductions are exact.
pub fn rooted_tree_resistance(ball: &TreeBall, root_edges: &[u32]) -> Resistance {
    let extra: Vec<f64> = root_edges.iter().map(|&k| k as f64).collect();
    let none = vec![false; extra.len()];
    let c = series_parallel(&ball_children(ball), &none, &extra);
    if c > 0.0 {
        Resistance::Finite(1.0 / c)
    } else {
        Resistance::Infinite
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootingFrequency {
    pub samples: usize,
    pub exceed: usize,
    pub frequency: f64,
    /// `4 (1 − ε)^ℓ / ε`.
    pub bound: f64,
    pub tree_resistance: f64,
}

/// Samples random ε-rootings of a depth-ℓ `d`-regular tree (each vertex a
/// sink with probability ε, receiving `deg − 1` root edges) and counts how
/// often `R(x, ρ) > (1 + ε) R(x, T)`.
pub fn rooting_exceedance(d: usize, depth: usize, eps: f64, samples: usize, seed: u64) -> Result<RootingFrequency> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {eps} outside (0, 1)")));
    }
    let ball = regular_tree(d, depth)?;
    let r_tree = tree_resistance(&ball)?.finite().unwrap_or(f64::INFINITY);
    let degrees = ball.tree.degrees();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![0u32; degrees.len()];
    let mut exceed = 0;
    for _ in 0..samples {
        for (e, &deg) in edges.iter_mut().zip(&degrees) {
            *e = if rng.gen_bool(eps) { deg.saturating_sub(1) as u32 } else { 0 };
        }
        let over = match rooted_tree_resistance(&ball, &edges) {
            Resistance::Infinite => true,
            Resistance::Finite(r) => r > (1.0 + eps) * r_tree,
        };
        exceed += over as usize;
    }
    Ok(RootingFrequency {
        samples,
        exceed,
        frequency: exceed as f64 / samples.max(1) as f64,
        bound: 4.0 * (1.0 - eps).powi(depth as i32) / eps,
        tree_resistance: r_tree,
    })
}
