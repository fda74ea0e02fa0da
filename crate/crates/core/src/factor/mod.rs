//! Orthonormalization of the similarity matrix by Cholesky factorization.
//!
//! `S = P F Fᵀ Pᵀ` where `P` is a fill-reducing permutation and `F` the
//! lower-triangular Cholesky factor of `Pᵀ S P`, so `E = P F` satisfies
//! `S = E Eᵀ`. Coordinates in an orthonormal basis are `Eᵀ W x`: their
//! Euclidean dot product equals `(Wx)ᵀ S (Wy)`.

mod dense;
mod rcm;

pub use dense::{cholesky_dense, orthonormalize_gaussian};
pub use rcm::{bandwidth, rcm_order};

use std::io::Write;
use std::path::Path;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;
use crate::vector::SparseDocVector;
use crate::weights::TermWeights;

/// Matrices up to this order are factorized densely.
pub const DENSE_CUTOFF: usize = 512;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Permutation {
    #[default]
    None,
    Rcm,
}

/// Permutation `P` and lower-triangular `F` with `E = P F`.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyFactor {
    n: usize,
    /// `perm[new] = old`.
    perm: Vec<usize>,
    /// Column pointers into `rows`/`vals`; the diagonal is first in each column.
    col_ptr: Vec<usize>,
    rows: Vec<usize>,
    vals: Vec<f64>,
}

impl CholeskyFactor {
    fn from_columns(perm: Vec<usize>, cols: Vec<Vec<(usize, f64)>>) -> Self {
        let n = cols.len();
        let mut col_ptr = Vec::with_capacity(n + 1);
        col_ptr.push(0);
        let mut rows = Vec::new();
        let mut vals = Vec::new();
        for col in cols {
            for (i, v) in col {
                rows.push(i);
                vals.push(v);
            }
            col_ptr.push(rows.len());
        }
        Self { n, perm, col_ptr, rows, vals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Stored non-zeros of `F`, diagonal included.
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn column(&self, j: usize) -> (&[usize], &[f64]) {
        let r = self.col_ptr[j]..self.col_ptr[j + 1];
        (&self.rows[r.clone()], &self.vals[r])
    }

    /// `F` as a dense matrix (in permuted order).
    pub fn factor_dense(&self) -> DenseMatrix {
        let mut f = DenseMatrix::zeros(self.n, self.n);
        for j in 0..self.n {
            let (rows, vals) = self.column(j);
            for (&i, &v) in rows.iter().zip(vals) {
                f[(i, j)] = v;
            }
        }
        f
    }

    /// `E = P F` as a dense matrix.
    pub fn e_dense(&self) -> DenseMatrix {
        let f = self.factor_dense();
        let mut e = DenseMatrix::zeros(self.n, self.n);
        for (new, &old) in self.perm.iter().enumerate() {
            e.row_mut(old).copy_from_slice(f.row(new));
        }
        e
    }

    /// `P F Fᵀ Pᵀ`, which should equal the factorized matrix.
    pub fn reconstruct(&self) -> DenseMatrix {
        self.e_dense().mul_self_transpose()
    }

    /// Writes `F` in Matrix Market format and the permutation, one original
    /// index per line (line `k` holds `perm[k]`).
    pub fn save(&self, factor_path: &Path, perm_path: &Path) -> Result<()> {
        let entries: Vec<_> = (0..self.n)
            .flat_map(|j| {
                let (rows, vals) = self.column(j);
                rows.iter().zip(vals).map(move |(&i, &v)| (i, j, v))
            })
            .collect();
        let f = std::io::BufWriter::new(std::fs::File::create(factor_path)?);
        crate::mm::write_coordinate(f, self.n, self.n, false, &entries)?;
        let mut p = std::io::BufWriter::new(std::fs::File::create(perm_path)?);
        for &old in &self.perm {
            writeln!(p, "{old}")?;
        }
        p.flush()?;
        Ok(())
    }
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

/// Upper triangle (rows `i <= k`) of each column `k` of `Pᵀ S P`.
fn permuted_upper(s: &SimilarityMatrix, perm: &[usize]) -> Vec<Vec<(usize, f64)>> {
    let pinv = inverse(perm);
    perm.iter()
        .enumerate()
        .map(|(k, &old_col)| {
            let (rows, vals) = s.column(old_col);
            rows.iter().zip(vals).map(|(&r, &v)| (pinv[r], v)).filter(|&(i, _)| i <= k).collect()
        })
        .collect()
}

/// Elimination tree of a symmetric matrix given by its upper columns.
fn etree(upper: &[Vec<(usize, f64)>]) -> Vec<usize> {
    let n = upper.len();
    let mut parent = vec![NONE; n];
    let mut ancestor = vec![NONE; n];
    for (k, col) in upper.iter().enumerate() {
        for &(start, _) in col {
            let mut i = start;
            while i != NONE && i < k {
                let next = ancestor[i];
                ancestor[i] = k;
                if next == NONE {
                    parent[i] = k;
                }
                i = next;
            }
        }
    }
    parent
}

/// Up-looking sparse Cholesky: row `k` of `F` is solved from the rows above
/// it, visiting only the row's non-zero pattern (found by walking the
/// elimination tree).
fn factor_sparse(upper: &[Vec<(usize, f64)>], perm: &[usize]) -> Result<Vec<Vec<(usize, f64)>>> {
    let n = upper.len();
    let parent = etree(upper);
    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut x = vec![0.0f64; n];
    let mut mark = vec![NONE; n];
    let mut segments: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        // Row pattern of F in topological order, descendants first.
        segments.clear();
        mark[k] = k;
        for &(i, v) in &upper[k] {
            x[i] += v;
            let mut i = i;
            let mut path = Vec::new();
            while i != NONE && mark[i] != k {
                path.push(i);
                mark[i] = k;
                i = parent[i];
            }
            if !path.is_empty() {
                segments.push(path);
            }
        }

        let mut d = std::mem::take(&mut x[k]);
        for &j in segments.iter().rev().flatten() {
            let lkj = std::mem::take(&mut x[j]) / cols[j][0].1;
            for &(i, lij) in &cols[j][1..] {
                x[i] -= lij * lkj;
            }
            d -= lkj * lkj;
            cols[j].push((k, lkj));
        }
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::NotPositiveDefinite { column: perm[k] });
        }
        cols[k].push((k, d.sqrt()));
    }
    Ok(cols)
}

fn factor_dense_path(s: &SimilarityMatrix, perm: &[usize]) -> Result<Vec<Vec<(usize, f64)>>> {
    let n = s.n();
    let mut a = DenseMatrix::zeros(n, n);
    for (k, col) in permuted_upper(s, perm).into_iter().enumerate() {
        for (i, v) in col {
            a[(i, k)] = v;
            a[(k, i)] = v;
        }
    }
    let l = cholesky_dense(&a).map_err(|e| match e {
        Error::NotPositiveDefinite { column } => Error::NotPositiveDefinite { column: perm[column] },
        other => other,
    })?;
    Ok((0..n).map(|j| (j..n).map(|i| (i, l[(i, j)])).filter(|&(i, v)| i == j || v != 0.0).collect()).collect())
}

fn prepare(s: &SimilarityMatrix, permutation: Permutation) -> Result<Vec<usize>> {
    if !s.is_symmetric() {
        return Err(Error::InvalidMatrix("Cholesky factorization needs a symmetric matrix".into()));
    }
    Ok(match permutation {
        Permutation::None => (0..s.n()).collect(),
        Permutation::Rcm => rcm_order(s),
    })
}

/// Cholesky factorization of a symmetric positive-definite `s`, dense for
/// small orders and sparse otherwise.
///
/// Fails with [`Error::NotPositiveDefinite`] carrying the original column
/// index of the first non-positive pivot; indefinite input is never repaired.
pub fn cholesky(s: &SimilarityMatrix, permutation: Permutation) -> Result<CholeskyFactor> {
    let perm = prepare(s, permutation)?;
    let cols = if s.n() <= DENSE_CUTOFF {
        factor_dense_path(s, &perm)?
    } else {
        factor_sparse(&permuted_upper(s, &perm), &perm)?
    };
    Ok(CholeskyFactor::from_columns(perm, cols))
}

/// [`cholesky`] forced onto the sparse up-looking path regardless of order.
pub fn cholesky_sparse(s: &SimilarityMatrix, permutation: Permutation) -> Result<CholeskyFactor> {
    let perm = prepare(s, permutation)?;
    let cols = factor_sparse(&permuted_upper(s, &perm), &perm)?;
    Ok(CholeskyFactor::from_columns(perm, cols))
}

/// Coordinates of `x` in an orthonormal basis: `Eᵀ W x = Fᵀ Pᵀ W x`.
///
/// The dot product of two transformed vectors equals their soft inner
/// product `(Wx)ᵀ S (Wy)`.
pub fn transform_to_orthonormal(x: &SparseDocVector, weights: &TermWeights, chol: &CholeskyFactor) -> Result<Vec<f64>> {
    let n = chol.n();
    for found in [x.dim(), weights.len()] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    let pinv = inverse(&chol.perm);
    let mut u = vec![0.0; n];
    for (i, v) in x.iter() {
        u[pinv[i]] = weights.get(i) * v;
    }
    Ok((0..n)
        .map(|j| {
            let (rows, vals) = chol.column(j);
            rows.iter().zip(vals).map(|(&i, &f)| f * u[i]).sum()
        })
        .collect())
}
