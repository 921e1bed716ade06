//! Random high-girth regular and biregular graphs.
//!
//! A configuration-model pairing is repaired by degree-preserving edge
//! switchings: an edge lying on a loop, a parallel pair or a cycle shorter
//! than `g_min` is swapped with a random edge, and the switch is kept only
//! if neither new edge closes a short cycle. Short cycles are never
//! created, so every accepted switch makes progress. An attempt that runs
//! out of switch budget is restarted from a fresh pairing.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

/// Smallest vertex count of a `d`-regular graph of girth `g` (Moore bound).
pub fn moore_bound(d: usize, g: usize) -> usize {
    if g < 3 || d < 2 {
        return d + 1;
    }
    let r = g / 2;
    let geometric = |terms: usize| (0..terms).map(|i| (d - 1).pow(i as u32)).sum::<usize>();
    if g % 2 == 1 {
        1 + d * geometric(r)
    } else {
        2 * geometric(r)
    }
}

struct Switcher {
    adj: Vec<Vec<usize>>,
    /// `Some(left)` keeps the graph bipartite with `left[v]` the side.
    left: Option<Vec<bool>>,
    left_vertices: Vec<usize>,
    g_min: usize,
    seen: Vec<u32>,
    stamp: u32,
    dist: Vec<usize>,
    parent: Vec<usize>,
    bfs: VecDeque<usize>,
}

impl Switcher {
    fn new(adj: Vec<Vec<usize>>, left: Option<Vec<bool>>, g_min: usize) -> Self {
        let n = adj.len();
        let left_vertices = match &left {
            Some(l) => (0..n).filter(|&v| l[v]).collect(),
            None => (0..n).collect(),
        };
        Switcher {
            adj,
            left,
            left_vertices,
            g_min,
            seen: vec![0; n],
            stamp: 0,
            dist: vec![0; n],
            parent: vec![0; n],
            bfs: VecDeque::new(),
        }
    }

    fn remove(&mut self, u: usize, v: usize) {
        let pos = self.adj[u].iter().position(|&w| w == v).expect("edge present");
        self.adj[u].swap_remove(pos);
        let pos = self.adj[v].iter().position(|&w| w == u).expect("edge present");
        self.adj[v].swap_remove(pos);
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn next_stamp(&mut self) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
    }

    /// An edge at or near `u` that is a loop, a parallel copy, or lies on
    /// a cycle shorter than `g_min`.
    fn bad_edge_at(&mut self, u: usize) -> Option<(usize, usize)> {
        let list = &self.adj[u];
        for (i, &w) in list.iter().enumerate() {
            if w == u || list[..i].contains(&w) {
                return Some((u, w));
            }
        }
        if self.g_min <= 3 {
            return None;
        }
        self.next_stamp();
        self.seen[u] = self.stamp;
        self.dist[u] = 0;
        self.parent[u] = usize::MAX;
        self.bfs.clear();
        self.bfs.push_back(u);
        while let Some(a) = self.bfs.pop_front() {
            if 2 * self.dist[a] + 1 >= self.g_min {
                break;
            }
            for i in 0..self.adj[a].len() {
                let b = self.adj[a][i];
                if self.seen[b] != self.stamp {
                    self.seen[b] = self.stamp;
                    self.dist[b] = self.dist[a] + 1;
                    self.parent[b] = a;
                    self.bfs.push_back(b);
                } else if self.parent[a] != b && self.dist[a] + self.dist[b] + 1 < self.g_min {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Whether `b` is within distance `limit` of `a`.
    fn within(&mut self, a: usize, b: usize, limit: usize) -> bool {
        if a == b {
            return true;
        }
        self.next_stamp();
        self.seen[a] = self.stamp;
        self.dist[a] = 0;
        self.bfs.clear();
        self.bfs.push_back(a);
        while let Some(x) = self.bfs.pop_front() {
            if self.dist[x] >= limit {
                break;
            }
            for i in 0..self.adj[x].len() {
                let y = self.adj[x][i];
                if y == b {
                    return true;
                }
                if self.seen[y] != self.stamp {
                    self.seen[y] = self.stamp;
                    self.dist[y] = self.dist[x] + 1;
                    self.bfs.push_back(y);
                }
            }
        }
        false
    }

    fn new_edge_ok(&mut self, a: usize, b: usize) -> bool {
        a != b && !self.adj[a].contains(&b) && !self.within(a, b, self.g_min.saturating_sub(2))
    }

    /// Tries to replace `uv` and a random edge `xy` by `uy`, `xv` (or the
    /// other pairing). Returns the touched vertices on success.
    fn try_switch(&mut self, u: usize, v: usize, rng: &mut ChaCha8Rng) -> Option<[usize; 4]> {
        let (u, v) = match &self.left {
            Some(l) if !l[u] => (v, u),
            _ => (u, v),
        };
        let x = *self.left_vertices.choose(rng)?;
        let y = *self.adj[x].choose(rng)?;
        let (x, y) = if self.left.is_none() && rng.gen_bool(0.5) { (y, x) } else { (x, y) };
        if x == u || x == v || y == u || y == v {
            return None;
        }
        let (p1, q1, p2, q2) = (u, y, x, v);
        self.remove(u, v);
        self.remove(x, y);
        if self.new_edge_ok(p1, q1) {
            self.add(p1, q1);
            if self.new_edge_ok(p2, q2) {
                self.add(p2, q2);
                return Some([u, v, x, y]);
            }
            self.remove(p1, q1);
        }
        self.add(u, v);
        self.add(x, y);
        None
    }

    /// Runs switchings until no bad edge remains or `budget` trials are
    /// spent.
    fn repair(&mut self, rng: &mut ChaCha8Rng, mut budget: usize) -> bool {
        let n = self.adj.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut queue: VecDeque<usize> = order.into_iter().collect();
        let mut queued = vec![true; n];
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            while let Some((a, b)) = self.bad_edge_at(u) {
                let mut done = None;
                for _ in 0..64 {
                    if budget == 0 {
                        return false;
                    }
                    budget -= 1;
                    if let Some(touched) = self.try_switch(a, b, rng) {
                        done = Some(touched);
                        break;
                    }
                }
                match done {
                    Some(touched) => {
                        for w in touched {
                            if w != u && !queued[w] {
                                queued[w] = true;
                                queue.push_back(w);
                            }
                        }
                    }
                    None => {
                        if !queued[u] {
                            queued[u] = true;
                            queue.push_back(u);
                        }
                        break;
                    }
                }
            }
        }
        true
    }

    fn to_multigraph(&self) -> Result<Multigraph> {
        let mut g = Multigraph::new(self.adj.len());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    g.add_edge(u, v, 1)?;
                }
            }
        }
        Ok(g)
    }
}

fn generate(
    stubs_left: Vec<usize>,
    stubs_right: Option<Vec<usize>>,
    n: usize,
    left: Option<Vec<bool>>,
    g_min: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_girth: Option<usize> = None;
    for _ in 0..max_attempts.max(1) {
        let mut adj = vec![Vec::new(); n];
        let mut a = stubs_left.clone();
        a.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = match &stubs_right {
            Some(r) => {
                let mut b = r.clone();
                b.shuffle(&mut rng);
                a.into_iter().zip(b).collect()
            }
            None => a.chunks(2).map(|c| (c[0], c[1])).collect(),
        };
        for (u, v) in pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut sw = Switcher::new(adj, left.clone(), g_min.max(3));
        let budget = 400 * n + 20_000;
        if sw.repair(&mut rng, budget) {
            let g = sw.to_multigraph()?;
            if g.girth_at_least(g_min) {
                return Ok(g);
            }
        }
        let simple = sw
            .adj
            .iter()
            .enumerate()
            .all(|(u, l)| l.iter().enumerate().all(|(i, &w)| w != u && !l[..i].contains(&w)));
        if simple {
            let girth = sw.to_multigraph()?.girth();
            best_girth = match (best_girth, girth) {
                (Some(b), Some(g)) => Some(b.max(g)),
                (b, g) => b.or(g),
            };
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: max_attempts.max(1),
        best_girth,
    })
}

/// Simple `d`-regular graph on `n` vertices with girth at least `g_min`.
pub fn build_random_regular_girth(n: usize, d: usize, g_min: usize, seed: u64, max_attempts: usize) -> Result<Multigraph> {
    if d < 3 || (n * d) % 2 == 1 || d >= n {
        return Err(Error::Infeasible(format!(
            "random regular graph needs d >= 3, d < n and n*d even, got n={n} d={d}"
        )));
    }
    if n < moore_bound(d, g_min) {
        return Err(Error::Infeasible(format!(
            "no {d}-regular graph of girth {g_min} on {n} vertices (Moore bound {})",
            moore_bound(d, g_min)
        )));
    }
    let stubs = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    generate(stubs, None, n, None, g_min, seed, max_attempts)
}

/// Bipartite graph with `nl` left vertices of degree `dl` (ids `0..nl`) and
/// `nr` right vertices of degree `dr` (ids `nl..nl+nr`).
pub fn build_bipartite_biregular(
    nl: usize,
    dl: usize,
    nr: usize,
    dr: usize,
    g_min: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<Multigraph> {
    if nl * dl != nr * dr || dl == 0 || dr == 0 || dl > nr || dr > nl {
        return Err(Error::Infeasible(format!(
            "biregular bipartite degrees do not balance: {nl}x{dl} vs {nr}x{dr}"
        )));
    }
    let n = nl + nr;
    let left_stubs = (0..nl).flat_map(|v| std::iter::repeat(v).take(dl)).collect();
    let right_stubs = (nl..n).flat_map(|v| std::iter::repeat(v).take(dr)).collect();
    let left = (0..n).map(|v| v < nl).collect();
    generate(left_stubs, Some(right_stubs), n, Some(left), g_min, seed, max_attempts)
}

/// `3n/7` degree-4 vertices (ids first) against `4n/7` degree-3 vertices.
pub fn build_biregular_bipartite(n: usize, seed: u64, g_min: usize) -> Result<Multigraph> {
    if n == 0 || n % 7 != 0 {
        return Err(Error::Infeasible(format!("biregular construction needs 7 | n, got {n}")));
    }
    build_bipartite_biregular(3 * n / 7, 4, 4 * n / 7, 3, g_min, seed, DEFAULT_MAX_ATTEMPTS)
}

/// A 4-regular bipartite graph on `n_base` vertices with every right-side
/// vertex split into two adjacent degree-3 vertices.
///
/// Layout: left vertices keep ids `0..n_base/2`; right vertex `j` becomes
/// `n_base/2 + 2j` and `n_base/2 + 2j + 1`.
pub fn build_split_4regular(n_base: usize, seed: u64, g_min: usize) -> Result<Multigraph> {
    if n_base % 2 == 1 || n_base < 8 {
        return Err(Error::Infeasible(format!(
            "split construction needs an even base of at least 8 vertices, got {n_base}"
        )));
    }
    let side = n_base / 2;
    let base = build_bipartite_biregular(side, 4, side, 4, g_min, seed, DEFAULT_MAX_ATTEMPTS)?;
    let adj = base.adjacency();
    let mut g = Multigraph::new(3 * side);
    for j in 0..side {
        let (a, b) = (side + 2 * j, side + 2 * j + 1);
        g.add_edge(a, b, 1)?;
        for (i, &(l, _)) in adj[side + j].iter().enumerate() {
            g.add_edge(l, if i < 2 { a } else { b }, 1)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moore_bounds() {
        assert_eq!(moore_bound(3, 5), 10);
        assert_eq!(moore_bound(3, 6), 14);
        assert_eq!(moore_bound(3, 8), 30);
    }

    #[test]
    fn small_cubic() {
        let g = build_random_regular_girth(10, 3, 3, 1, 100).unwrap();
        assert_eq!(g.degrees(), vec![3; 10]);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.max_multiplicity(), 1);
    }

    #[test]
    fn parity_and_moore_errors() {
        assert!(matches!(build_random_regular_girth(5, 3, 3, 0, 10), Err(Error::Infeasible(_))));
        assert!(matches!(build_random_regular_girth(12, 3, 8, 0, 10), Err(Error::Infeasible(_))));
    }

    #[test]
    fn cubic_girth_six() {
        let g = build_random_regular_girth(200, 3, 6, 7, 100).unwrap();
        assert_eq!(g.degrees(), vec![3; 200]);
        assert!(g.girth().unwrap() >= 6);
        assert!(g.is_connected());
    }

    #[test]
    fn biregular_small_and_medium() {
        let g = build_biregular_bipartite(7, 0, 4).unwrap();
        let d = g.degrees();
        assert_eq!(&d[..3], &[4, 4, 4]);
        assert_eq!(&d[3..], &[3, 3, 3, 3]);
        let g = build_biregular_bipartite(140, 3, 8).unwrap();
        assert_eq!(g.edge_count(), 240);
        assert!(g.girth_at_least(8));
        assert!(build_biregular_bipartite(20, 0, 4).is_err());
    }

    #[test]
    fn split_layout() {
        let g = build_split_4regular(60, 5, 6).unwrap();
        assert_eq!(g.n_vertices(), 90);
        assert_eq!(g.edge_count(), 150);
        let d = g.degrees();
        assert!(d[..30].iter().all(|&x| x == 4));
        assert!(d[30..].iter().all(|&x| x == 3));
        for j in 0..30 {
            let (a, b) = (30 + 2 * j, 31 + 2 * j);
            assert_eq!(g.multiplicity(a, b), 1);
            let base_nbrs = |v: usize| g.adjacency()[v].iter().filter(|&&(w, _)| w < 30).count();
            assert_eq!(base_nbrs(a), 2);
            assert_eq!(base_nbrs(b), 2);
        }
        assert!(g.girth_at_least(6));
    }
}
