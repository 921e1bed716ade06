//! Electrical current flows on unit-resistance multigraphs.
//!
//! Parallel copies of an edge carry equal current, so a flow stores one
//! per-copy current per adjacent pair.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use crate::resistance::unit_conductances;
use crate::solver::{GroundedLaplacian, Method};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeCurrent {
    pub u: Vertex,
    pub v: Vertex,
    pub multiplicity: u32,
    /// Current through each copy, positive from `u` to `v`.
    pub current: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurrentFlow {
    injection: Vec<f64>,
    potential: Vec<f64>,
    edges: Vec<EdgeCurrent>,
}

impl CurrentFlow {
    /// Flow driven by arbitrary injections (they must sum to zero).
    pub fn from_injections(g: &Multigraph, injection: &[f64]) -> Result<Self> {
        let n = g.n_vertices();
        if injection.len() != n {
            return Err(Error::InvalidParameter("one injection per vertex required".into()));
        }
        let net: f64 = injection.iter().sum();
        let scale = injection.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
        if net.abs() > 1e-12 * scale {
            return Err(Error::InvalidParameter(format!("injections sum to {net}, not 0")));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let potential = if n == 1 {
            vec![0.0]
        } else {
            GroundedLaplacian::new(n, &unit_conductances(g), n - 1, Method::Auto)?.potentials(injection)?
        };
        let edges = g
            .edges()
            .map(|(u, v, k)| EdgeCurrent {
                u,
                v,
                multiplicity: k,
                current: potential[u] - potential[v],
            })
            .collect();
        Ok(CurrentFlow {
            injection: injection.to_vec(),
            potential,
            edges,
        })
    }

    pub fn zero(g: &Multigraph) -> Self {
        CurrentFlow {
            injection: vec![0.0; g.n_vertices()],
            potential: vec![0.0; g.n_vertices()],
            edges: g
                .edges()
                .map(|(u, v, k)| EdgeCurrent {
                    u,
                    v,
                    multiplicity: k,
                    current: 0.0,
                })
                .collect(),
        }
    }

    pub fn injection(&self) -> &[f64] {
        &self.injection
    }

    pub fn potentials(&self) -> &[f64] {
        &self.potential
    }

    pub fn edges(&self) -> &[EdgeCurrent] {
        &self.edges
    }

    fn find(&self, a: Vertex, b: Vertex) -> Option<&EdgeCurrent> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&key, |e| (e.u, e.v))
            .ok()
            .map(|i| &self.edges[i])
    }

    /// Current through one copy of `ab`, positive from `a` to `b`.
    pub fn copy_current(&self, a: Vertex, b: Vertex) -> f64 {
        match self.find(a, b) {
            Some(e) if e.u == a => e.current,
            Some(e) => -e.current,
            None => 0.0,
        }
    }

    /// Current through all copies of `ab` together.
    pub fn pair_current(&self, a: Vertex, b: Vertex) -> f64 {
        let k = self.find(a, b).map_or(0, |e| e.multiplicity);
        k as f64 * self.copy_current(a, b)
    }

    /// Largest violation of current conservation at any vertex.
    pub fn kcl_residual(&self) -> f64 {
        let mut net = self.injection.clone();
        for e in &self.edges {
            let total = e.multiplicity as f64 * e.current;
            net[e.u] -= total;
            net[e.v] += total;
        }
        net.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest violation of `I = V_u − V_v` on any edge.
    pub fn ohm_residual(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| (e.current - (self.potential[e.u] - self.potential[e.v])).abs())
            .fold(0.0, f64::max)
    }

    /// Rows `u,v,copy,current`, one per parallel copy.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["u", "v", "copy", "current"])?;
        for e in &self.edges {
            for copy in 0..e.multiplicity {
                w.serialize((e.u, e.v, copy, e.current))?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// The unit current flow from `x` to `y`, with `V_y = 0`.
pub fn unit_current_flow(g: &Multigraph, x: Vertex, y: Vertex) -> Result<CurrentFlow> {
    let n = g.n_vertices();
    for v in [x, y] {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
    }
    if x == y {
        return Err(Error::InvalidParameter("source and sink coincide".into()));
    }
    let mut inj = vec![0.0; n];
    inj[x] = 1.0;
    inj[y] = -1.0;
    let mut f = CurrentFlow::from_injections(g, &inj)?;
    let shift = f.potential[y];
    for p in &mut f.potential {
        *p -= shift;
    }
    Ok(f)
}

/// Edgewise sum of two flows on the same graph.
pub fn superpose(f1: &CurrentFlow, f2: &CurrentFlow) -> Result<CurrentFlow> {
    let same = f1.injection.len() == f2.injection.len()
        && f1.edges.len() == f2.edges.len()
        && f1
            .edges
            .iter()
            .zip(&f2.edges)
            .all(|(a, b)| (a.u, a.v, a.multiplicity) == (b.u, b.v, b.multiplicity));
    if !same {
        return Err(Error::MismatchedFlows);
    }
    let add = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
    Ok(CurrentFlow {
        injection: add(&f1.injection, &f2.injection),
        potential: add(&f1.potential, &f2.potential),
        edges: f1
            .edges
            .iter()
            .zip(&f2.edges)
            .map(|(a, b)| EdgeCurrent {
                current: a.current + b.current,
                ..*a
            })
            .collect(),
    })
}

/// `Σ I_e²` over unit edges, each parallel copy counted.
pub fn flow_power(f: &CurrentFlow) -> f64 {
    f.edges
        .iter()
        .map(|e| e.multiplicity as f64 * e.current * e.current)
        .sum()
}
