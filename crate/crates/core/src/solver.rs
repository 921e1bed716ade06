//! Grounded Laplacian solves.
//!
//! Small systems use a dense Cholesky factorisation; larger ones use
//! conjugate gradients with a Jacobi preconditioner plus a rank-one
//! correction along the all-ones vector, which carries the slowly
//! converging mode of a Laplacian grounded at a single vertex.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest grounded system factorised densely.
pub const DENSE_LIMIT: usize = 2000;
/// Relative residual at which conjugate gradients stop.
pub const CG_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    #[default]
    Auto,
    Dense,
    Iterative,
}

/// Lower-triangular `L` with `A = L Lᵀ`, stored row-major in full.
#[derive(Clone, Debug)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn factor(n: usize, mut a: Vec<f64>) -> Result<Self> {
        assert_eq!(a.len(), n * n);
        for i in 0..n {
            for j in 0..=i {
                let (ri, rj) = (i * n, j * n);
                let dot: f64 = a[ri..ri + j].iter().zip(&a[rj..rj + j]).map(|(x, y)| x * y).sum();
                let v = a[ri + j] - dot;
                if i == j {
                    if v <= 0.0 || !v.is_finite() {
                        return Err(Error::NotPositiveDefinite { row: i, pivot: v });
                    }
                    a[ri + i] = v.sqrt();
                } else {
                    a[ri + j] = v / a[rj + j];
                }
            }
            for j in i + 1..n {
                a[i * n + j] = 0.0;
            }
        }
        Ok(Cholesky { n, l: a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let dot: f64 = row.iter().zip(&b[..i]).map(|(x, y)| x * y).sum();
            b[i] = (b[i] - dot) / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * b[k];
            }
            b[i] = s / self.l[i * n + i];
        }
    }

    /// Rows of `(L⁻¹)ᵀ`: row `j` holds column `j` of `L⁻¹`, zero before `j`.
    fn inverse_factor_transposed(&self) -> Vec<f64> {
        let n = self.n;
        let mut t = vec![0.0; n * n];
        t.par_chunks_mut(n.max(1)).enumerate().for_each(|(j, x)| {
            x[j] = 1.0 / self.l[j * n + j];
            for k in j + 1..n {
                let row = &self.l[k * n + j..k * n + k];
                let dot: f64 = row.iter().zip(&x[j..k]).map(|(a, b)| a * b).sum();
                x[k] = -dot / self.l[k * n + k];
            }
        });
        t
    }

    /// Diagonal of `A⁻¹`.
    pub fn inverse_diagonal(&self) -> Vec<f64> {
        let n = self.n;
        let t = self.inverse_factor_transposed();
        (0..n).map(|j| t[j * n + j..(j + 1) * n].iter().map(|v| v * v).sum()).collect()
    }

    /// Full `A⁻¹`, row-major.
    pub fn inverse(&self) -> Vec<f64> {
        let n = self.n;
        let t = self.inverse_factor_transposed();
        let mut m = vec![0.0; n * n];
        m.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
            for (j, out) in row.iter_mut().enumerate() {
                let k0 = i.max(j);
                *out = t[i * n + k0..(i + 1) * n]
                    .iter()
                    .zip(&t[j * n + k0..(j + 1) * n])
                    .map(|(a, b)| a * b)
                    .sum();
            }
        });
        m
    }
}

/// Symmetric sparse matrix in CSR form.
#[derive(Clone, Debug)]
pub struct Csr {
    n: usize,
    start: Vec<usize>,
    col: Vec<usize>,
    val: Vec<f64>,
}

impl Csr {
    fn from_triplets(n: usize, mut entries: Vec<(usize, usize, f64)>) -> Self {
        entries.sort_by_key(|&(i, j, _)| (i, j));
        let mut start = vec![0; n + 1];
        let mut col = Vec::with_capacity(entries.len());
        let mut val: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                *val.last_mut().unwrap() += v;
                continue;
            }
            last = Some((i, j));
            start[i + 1] += 1;
            col.push(j);
            val.push(v);
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        Csr { n, start, col, val }
    }

    fn mul(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut s = 0.0;
            for p in self.start[i]..self.start[i + 1] {
                s += self.val[p] * x[self.col[p]];
            }
            y[i] = s;
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                (self.start[i]..self.start[i + 1])
                    .find(|&p| self.col[p] == i)
                    .map_or(0.0, |p| self.val[p])
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Pcg {
    a: Csr,
    inv_diag: Vec<f64>,
    /// `1 / (1ᵀ A 1)`.
    inv_total: f64,
    tolerance: f64,
    max_iter: usize,
}

impl Pcg {
    fn new(a: Csr) -> Self {
        let inv_diag = a.diagonal().iter().map(|&d| 1.0 / d).collect();
        let total: f64 = a.val.iter().sum();
        let n = a.n;
        Pcg {
            a,
            inv_diag,
            inv_total: 1.0 / total,
            tolerance: CG_TOLERANCE,
            max_iter: 20 * n + 100,
        }
    }

    fn precondition(&self, r: &[f64], z: &mut [f64]) {
        let coarse = r.iter().sum::<f64>() * self.inv_total;
        for ((zi, ri), di) in z.iter_mut().zip(r).zip(&self.inv_diag) {
            *zi = ri * di + coarse;
        }
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.a.n;
        let b_norm = norm(b);
        let mut x = vec![0.0; n];
        if b_norm == 0.0 {
            return Ok(x);
        }
        let mut r = b.to_vec();
        let mut z = vec![0.0; n];
        self.precondition(&r, &mut z);
        let mut p = z.clone();
        let mut ap = vec![0.0; n];
        let mut rz = dot(&r, &z);
        for _ in 0..self.max_iter {
            self.a.mul(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            if norm(&r) <= self.tolerance * b_norm {
                return Ok(x);
            }
            self.precondition(&r, &mut z);
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        Err(Error::SolverDiverged {
            iterations: self.max_iter,
            residual: norm(&r) / b_norm,
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Clone, Debug)]
enum Backend {
    Dense(Cholesky),
    Iterative(Pcg),
}

/// Weighted Laplacian with one vertex grounded (its row and column
/// removed), ready to solve for potentials.
///
/// The caller must pass a connected support; otherwise factorisation fails
/// with [`Error::NotPositiveDefinite`] or the iteration diverges.
#[derive(Clone, Debug)]
pub struct GroundedLaplacian {
    n: usize,
    ground: usize,
    backend: Backend,
}

impl GroundedLaplacian {
    /// `edges` are `(u, v, conductance)`; repeated pairs add.
    pub fn new(n: usize, edges: &[(usize, usize, f64)], ground: usize, method: Method) -> Result<Self> {
        if ground >= n {
            return Err(Error::InvalidVertex { vertex: ground, n });
        }
        let dim = n - 1;
        let row = |v: usize| if v < ground { v } else { v - 1 };
        let dense = match method {
            Method::Auto => dim <= DENSE_LIMIT,
            Method::Dense => true,
            Method::Iterative => false,
        };
        let backend = if dense {
            let mut a = vec![0.0; dim * dim];
            for &(u, v, c) in edges {
                if u != ground {
                    a[row(u) * dim + row(u)] += c;
                }
                if v != ground {
                    a[row(v) * dim + row(v)] += c;
                }
                if u != ground && v != ground {
                    a[row(u) * dim + row(v)] -= c;
                    a[row(v) * dim + row(u)] -= c;
                }
            }
            Backend::Dense(Cholesky::factor(dim, a)?)
        } else {
            let mut t = Vec::with_capacity(4 * edges.len());
            for &(u, v, c) in edges {
                if u != ground {
                    t.push((row(u), row(u), c));
                }
                if v != ground {
                    t.push((row(v), row(v), c));
                }
                if u != ground && v != ground {
                    t.push((row(u), row(v), -c));
                    t.push((row(v), row(u), -c));
                }
            }
            let csr = Csr::from_triplets(dim, t);
            if let Some(i) = csr.diagonal().iter().position(|&d| d <= 0.0) {
                return Err(Error::NotPositiveDefinite { row: i, pivot: 0.0 });
            }
            Backend::Iterative(Pcg::new(csr))
        };
        Ok(GroundedLaplacian { n, ground, backend })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.backend, Backend::Dense(_))
    }

    fn row(&self, v: usize) -> usize {
        if v < self.ground {
            v
        } else {
            v - 1
        }
    }

    fn solve_reduced(&self, mut b: Vec<f64>) -> Result<Vec<f64>> {
        match &self.backend {
            Backend::Dense(c) => {
                c.solve_in_place(&mut b);
                Ok(b)
            }
            Backend::Iterative(p) => p.solve(&b),
        }
    }

    /// Potentials for the given injections (indexed by vertex; the ground
    /// entry is ignored and the ground sits at potential 0).
    pub fn potentials(&self, injection: &[f64]) -> Result<Vec<f64>> {
        let b: Vec<f64> = (0..self.n)
            .filter(|&v| v != self.ground)
            .map(|v| injection[v])
            .collect();
        let x = self.solve_reduced(b)?;
        Ok((0..self.n)
            .map(|v| if v == self.ground { 0.0 } else { x[self.row(v)] })
            .collect())
    }

    /// Potentials for a unit current entering at `x` and leaving at the
    /// ground.
    pub fn unit_potentials(&self, x: usize) -> Result<Vec<f64>> {
        let mut inj = vec![0.0; self.n];
        if x != self.ground {
            inj[x] = 1.0;
        }
        self.potentials(&inj)
    }

    /// Effective resistance from every vertex to the ground.
    pub fn resistances_to_ground(&self) -> Result<Vec<f64>> {
        let diag = match &self.backend {
            Backend::Dense(c) => c.inverse_diagonal(),
            Backend::Iterative(p) => (0..self.n - 1)
                .into_par_iter()
                .map(|i| {
                    let mut b = vec![0.0; self.n - 1];
                    b[i] = 1.0;
                    p.solve(&b).map(|x| x[i])
                })
                .collect::<Result<Vec<f64>>>()?,
        };
        Ok((0..self.n)
            .map(|v| if v == self.ground { 0.0 } else { diag[self.row(v)] })
            .collect())
    }

    /// Sum of `R_xy` over unordered pairs, and the largest `R_xy`.
    pub fn pairwise_total_and_max(&self) -> Result<(f64, f64)> {
        let n = self.n;
        let dim = n - 1;
        match &self.backend {
            Backend::Dense(c) => {
                let m = c.inverse();
                let trace: f64 = (0..dim).map(|i| m[i * dim + i]).sum();
                let sum: f64 = m.iter().sum();
                let mut max = (0..dim).map(|i| m[i * dim + i]).fold(0.0, f64::max);
                for i in 0..dim {
                    for j in i + 1..dim {
                        max = max.max(m[i * dim + i] + m[j * dim + j] - 2.0 * m[i * dim + j]);
                    }
                }
                Ok((n as f64 * trace - sum, max))
            }
            Backend::Iterative(p) => {
                let solve_col = |i: usize| {
                    let mut b = vec![0.0; dim];
                    b[i] = 1.0;
                    p.solve(&b)
                };
                let diag: Vec<f64> = (0..dim)
                    .into_par_iter()
                    .map(|i| solve_col(i).map(|x| x[i]))
                    .collect::<Result<_>>()?;
                let ones = p.solve(&vec![1.0; dim])?;
                let trace: f64 = diag.iter().sum();
                let sum: f64 = ones.iter().sum();
                let diag_max = diag.iter().copied().fold(0.0, f64::max);
                let max = (0..dim)
                    .into_par_iter()
                    .map(|i| {
                        solve_col(i).map(|x| {
                            (0..dim)
                                .map(|j| diag[i] + diag[j] - 2.0 * x[j])
                                .fold(0.0, f64::max)
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?
                    .into_iter()
                    .fold(diag_max, f64::max);
                Ok((n as f64 * trace - sum, max))
            }
        }
    }
}
