//! Greedy descent with the contract-and-add-leaf move.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::multigraph::RootedGraph;
use crate::resistance::root_resistances;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalImprovement {
    #[serde(skip)]
    pub rooted: Option<RootedGraph>,
    pub steps: usize,
    /// `R_tot` before the first move and after each move.
    pub r_tot_history: Vec<f64>,
    pub b_initial: f64,
    #[serde(rename = "B")]
    pub b: f64,
    /// True when no move decreases `R_tot` any further.
    pub fixpoint: bool,
}

const MIN_GAIN: f64 = 1e-12;

/// At each step, tries the move at every non-root vertex (contracting
/// toward the neighbour nearest the root) and applies the one with the
/// largest drop in `R_tot`, lowest vertex on ties. Stops at a fixpoint or
/// after `max_steps` moves.
pub fn local_improve(g: &RootedGraph, max_steps: usize) -> Result<LocalImprovement> {
    let n = g.n_nonroot() as f64;
    let mut current = g.clone();
    let mut r = root_resistances(&current)?;
    let mut total: f64 = r.iter().sum();
    let mut history = vec![total];
    let b_initial = total / n;
    let mut fixpoint = false;
    let mut steps = 0;
    while steps < max_steps {
        let mut best: Option<(f64, RootedGraph, Vec<f64>)> = None;
        for x in current.non_root_vertices() {
            let candidate = current.contract_edge_add_leaf(x, Some(&r))?;
            let cr = match root_resistances(&candidate) {
                Ok(cr) => cr,
                Err(_) => continue,
            };
            let t: f64 = cr.iter().sum();
            if t < total - MIN_GAIN && best.as_ref().map_or(true, |(bt, _, _)| t < *bt - MIN_GAIN) {
                best = Some((t, candidate, cr));
            }
        }
        match best {
            Some((t, next, nr)) => {
                current = next;
                r = nr;
                total = t;
                history.push(t);
                steps += 1;
            }
            None => {
                fixpoint = true;
                break;
            }
        }
    }
    Ok(LocalImprovement {
        rooted: Some(current),
        steps,
        r_tot_history: history,
        b_initial,
        b: total / n,
        fixpoint,
    })
}
