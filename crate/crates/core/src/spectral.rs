//! Laplacian spectrum and the Kirchhoff index identity
//! `Σ_{x<y} R_xy = n · Σ 1/λ_i` over the nonzero eigenvalues.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

pub fn laplacian(g: &Multigraph) -> DMatrix<f64> {
    let n = g.n_vertices();
    let mut l = DMatrix::zeros(n, n);
    for (u, v, k) in g.edges() {
        let k = k as f64;
        l[(u, u)] += k;
        l[(v, v)] += k;
        l[(u, v)] -= k;
        l[(v, u)] -= k;
    }
    l
}

/// Laplacian eigenvalues in increasing order.
pub fn laplacian_spectrum(g: &Multigraph) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(laplacian(g)).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn kirchhoff_index_by_eigenvalues(g: &Multigraph) -> Result<f64> {
    let n = g.n_vertices();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let ev = laplacian_spectrum(g);
    let scale = ev.last().copied().unwrap_or(0.0).max(1.0);
    if ev[1] <= 1e-9 * scale {
        return Err(Error::Disconnected);
    }
    Ok(n as f64 * ev[1..].iter().map(|l| 1.0 / l).sum::<f64>())
}
