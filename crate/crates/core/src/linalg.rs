//! Hermitian eigensolvers: dense via nalgebra, Lanczos for large sparse
//! matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension diagonalized densely under [`Solver::Auto`].
pub const DENSE_LIMIT: usize = 400;
/// Residual tolerance of the iterative solver, relative to the spectral
/// radius.
pub const LANCZOS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    #[default]
    Auto,
    Dense,
    Lanczos,
}

/// Sparse Hermitian matrix in compressed-row form.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermitian {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

/// Accumulates `H[i][j] += v` together with its conjugate partner.
#[derive(Debug, Clone, Default)]
pub struct HermitianBuilder {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl HermitianBuilder {
    pub fn new(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    pub fn add_diag(&mut self, i: usize, v: f64) {
        self.entries.push((i, i, Complex64::new(v, 0.0)));
    }

    /// Adds `v` at `(i, j)` and `conj(v)` at `(j, i)`; `i != j`.
    pub fn add_pair(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert_ne!(i, j);
        self.entries.push((i, j, v));
        self.entries.push((j, i, v.conj()));
    }

    pub fn build(mut self) -> Hermitian {
        self.entries.sort_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0; self.dim + 1];
        let mut cols = Vec::with_capacity(self.entries.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(self.entries.len());
        let mut last = None;
        for (i, j, v) in self.entries {
            if last == Some((i, j)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(j);
                vals.push(v);
                row_ptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..self.dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Hermitian { dim: self.dim, row_ptr, cols, vals }
    }
}

impl Hermitian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let row = &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]];
        match row.binary_search(&j) {
            Ok(k) => self.vals[self.row_ptr[i] + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        for i in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            y[i] = acc;
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.cols[k])] = self.vals[k];
            }
        }
        m
    }

    /// Ascending eigenvalues of the dense matrix.
    pub fn dense_eigenvalues(&self) -> Vec<f64> {
        sorted(self.to_dense().symmetric_eigenvalues().iter().copied().collect())
    }

    pub fn lowest(&self, solver: Solver) -> Result<f64> {
        match solver {
            Solver::Dense => Ok(self.dense_eigenvalues()[0]),
            Solver::Lanczos => lanczos_lowest(self, LANCZOS_TOL),
            Solver::Auto if self.dim <= DENSE_LIMIT => Ok(self.dense_eigenvalues()[0]),
            Solver::Auto => lanczos_lowest(self, LANCZOS_TOL),
        }
    }

    /// True if no entry couples states whose `label` values differ.
    pub fn preserves(&self, label: impl Fn(usize) -> i64) -> bool {
        (0..self.dim).all(|i| {
            (self.row_ptr[i]..self.row_ptr[i + 1])
                .all(|k| self.vals[k] == Complex64::new(0.0, 0.0) || label(i) == label(self.cols[k]))
        })
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Ascending eigenvalues and eigenvectors (columns) of a real symmetric matrix.
pub fn symmetric_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let e = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..e.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let values = order.iter().map(|&k| e.eigenvalues[k]).collect();
    let vectors = DMatrix::from_columns(&order.iter().map(|&k| e.eigenvectors.column(k).into_owned()).collect::<Vec<DVector<f64>>>());
    (values, vectors)
}

/// Ascending eigenvalues of a real symmetric tridiagonal matrix.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    sorted(SymmetricEigen::new(m).eigenvalues.iter().copied().collect())
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Deterministic, non-degenerate start vector.
fn start_vector(dim: usize) -> Vec<Complex64> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut v: Vec<Complex64> = (0..dim).map(|_| Complex64::new(next(), next())).collect();
    let n = norm(&v);
    v.iter_mut().for_each(|x| *x /= n);
    v
}

/// Subtracts the projections of `w` onto every vector of `basis`, twice.
fn orthogonalize(w: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, w);
            w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
    }
}

fn combine(vectors: &[Vec<Complex64>], coeffs: impl Iterator<Item = Complex64>) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); vectors[0].len()];
    for (v, c) in vectors.iter().zip(coeffs) {
        out.iter_mut().zip(v).for_each(|(o, x)| *o += c * x);
    }
    out
}

/// Real symmetric form `[[A, -B], [B, A]]` of the Hermitian `A + iB`. Each
/// eigenvalue appears twice; `(u, v)` maps back to the eigenvector `u + iv`.
/// Used because the complex solver loses eigenvector accuracy on strongly
/// graded projected matrices.
fn real_embedding(p: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = p.nrows();
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = p[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// Upper bound on the spectral radius.
fn row_sum_bound(p: &DMatrix<Complex64>) -> f64 {
    (0..p.nrows()).map(|i| p.row(i).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Up to `keep` lowest orthonormal eigenpairs of a Hermitian matrix, as
/// coefficient vectors. Values are Rayleigh quotients of the returned vectors.
fn ritz_pairs(p: &DMatrix<Complex64>, keep: usize) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = p.nrows();
    let (_, real) = symmetric_eigen(real_embedding(p));
    let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(keep);
    for k in 0..2 * n {
        if vectors.len() == keep.min(n) {
            break;
        }
        let col = real.column(k);
        let mut c: Vec<Complex64> = (0..n).map(|i| Complex64::new(col[i], col[i + n])).collect();
        orthogonalize(&mut c, &vectors);
        let cn = norm(&c);
        // A partner of an accepted vector collapses to roundoff here.
        if cn > 0.5 {
            vectors.push(c.iter().map(|x| x / cn).collect());
        }
    }
    let values = vectors
        .iter()
        .map(|c| {
            let pc = p * DVector::from_column_slice(c);
            dot(c, pc.as_slice()).re
        })
        .collect();
    (values, vectors)
}

/// Ritz vectors carried over a restart.
const KEEP: usize = 8;

/// Lowest eigenvalue by thick-restart Lanczos with full reorthogonalization.
///
/// Each restart keeps the lowest [`KEEP`] Ritz vectors and extends them by
/// the residual of the lowest one, so a ground state that is slow to emerge
/// is not discarded along with the rest of the Krylov space. Converged when
/// the residual norm is below `tol` times the spectral radius estimate.
pub fn lanczos_lowest(h: &Hermitian, tol: f64) -> Result<f64> {
    let dim = h.dim();
    if dim == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    let krylov = dim.min(120);
    let keep = KEEP.min(krylov - 1).max(1);
    let mut basis = vec![start_vector(dim)];
    let mut images: Vec<Vec<Complex64>> = Vec::new();
    let mut proj: DMatrix<Complex64> = DMatrix::zeros(0, 0);
    let mut residual = f64::INFINITY;
    let max_restarts = 500;
    for _ in 0..max_restarts {
        let mut exhausted = false;
        loop {
            let j = images.len();
            let mut w = vec![Complex64::new(0.0, 0.0); dim];
            h.matvec(&basis[j], &mut w);
            proj = proj.resize(j + 1, j + 1, Complex64::new(0.0, 0.0));
            for (i, b) in basis.iter().enumerate() {
                let c = dot(b, &w);
                proj[(i, j)] = c;
                proj[(j, i)] = c.conj();
            }
            proj[(j, j)] = Complex64::new(proj[(j, j)].re, 0.0);
            images.push(w.clone());
            if basis.len() == krylov {
                break;
            }
            let scale = norm(&w);
            orthogonalize(&mut w, &basis);
            let nb = norm(&w);
            if nb <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
                exhausted = true;
                break;
            }
            basis.push(w.iter().map(|x| x / nb).collect());
        }
        let (values, vectors) = ritz_pairs(&proj, keep);
        let theta = values[0];
        let radius = row_sum_bound(&proj);
        let xs: Vec<Vec<Complex64>> = vectors.iter().map(|c| combine(&basis, c.iter().copied())).collect();
        let hxs: Vec<Vec<Complex64>> = vectors.iter().map(|c| combine(&images, c.iter().copied())).collect();
        let r: Vec<Complex64> = hxs[0].iter().zip(&xs[0]).map(|(a, b)| a - theta * b).collect();
        residual = norm(&r);
        if residual <= tol * radius || exhausted {
            return Ok(theta);
        }
        proj = DMatrix::from_fn(xs.len(), xs.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        basis = xs;
        images = hxs;
        let mut next = r;
        orthogonalize(&mut next, &basis);
        let nn = norm(&next);
        if nn == 0.0 {
            return Ok(theta);
        }
        basis.push(next.iter().map(|x| x / nn).collect());
    }
    Err(Error::Convergence { iterations: max_restarts, residual })
}
