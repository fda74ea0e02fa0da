//! Column-compressed term-similarity matrix.

use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
struct Compressed {
    ptr: Vec<usize>,
    idx: Vec<usize>,
    val: Vec<f64>,
}

impl Compressed {
    /// Builds compressed storage keyed by `major` with sorted `minor` indices.
    /// `entries` are `(major, minor, value)`; duplicates are rejected.
    fn from_entries(n: usize, mut entries: Vec<(usize, usize, f64)>) -> Result<Self> {
        entries.sort_unstable_by_key(|&(major, minor, _)| (major, minor));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidMatrix(format!("duplicate entry at ({}, {})", w[0].1, w[0].0)));
        }
        let mut ptr = vec![0usize; n + 1];
        for &(major, _, _) in &entries {
            ptr[major + 1] += 1;
        }
        for j in 0..n {
            ptr[j + 1] += ptr[j];
        }
        Ok(Self { ptr, idx: entries.iter().map(|e| e.1).collect(), val: entries.iter().map(|e| e.2).collect() })
    }

    fn slice(&self, j: usize) -> (&[usize], &[f64]) {
        let r = self.ptr[j]..self.ptr[j + 1];
        (&self.idx[r.clone()], &self.val[r])
    }
}

/// The `n × n` term-similarity matrix `S` in compressed sparse column form.
///
/// Entry `(i, j)` is the inner product of basis vectors `i` and `j`. Exact
/// zeros are never stored. When the matrix is not symmetric a row-compressed
/// copy is kept alongside so both row and column traversal cost
/// `O(non-zeros in that line)`.
#[derive(Debug)]
pub struct SimilarityMatrix {
    n: usize,
    cols: Compressed,
    rows: Option<Compressed>,
    symmetric: bool,
    nonnegative: bool,
    checksum: OnceLock<String>,
}

impl Clone for SimilarityMatrix {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            cols: self.cols.clone(),
            rows: self.rows.clone(),
            symmetric: self.symmetric,
            nonnegative: self.nonnegative,
            checksum: OnceLock::new(),
        }
    }
}

impl PartialEq for SimilarityMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cols == other.cols
    }
}

impl SimilarityMatrix {
    /// Builds a matrix from `(row, col, value)` triplets. Zero values are
    /// dropped, duplicate positions and non-finite values are errors.
    pub fn from_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut by_col = Vec::new();
        for (i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::InvalidMatrix(format!("entry ({i}, {j}) out of range for order {n}")));
            }
            if !v.is_finite() {
                return Err(Error::InvalidMatrix(format!("non-finite value at ({i}, {j})")));
            }
            if v != 0.0 {
                by_col.push((j, i, v));
            }
        }
        let cols = Compressed::from_entries(n, by_col)?;
        Ok(Self::from_columns(n, cols))
    }

    fn from_columns(n: usize, cols: Compressed) -> Self {
        let nonnegative = cols.val.iter().all(|&v| v >= 0.0);
        let transposed: Vec<_> = (0..n)
            .flat_map(|j| {
                let (rows, vals) = cols.slice(j);
                rows.iter().zip(vals).map(move |(&i, &v)| (i, j, v))
            })
            .collect();
        let rows = Compressed::from_entries(n, transposed).expect("no duplicates in valid CSC");
        let symmetric = rows == cols;
        Self { n, rows: (!symmetric).then_some(rows), cols, symmetric, nonnegative, checksum: OnceLock::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, (0..n).map(|i| (i, i, 1.0))).expect("identity is valid")
    }

    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidMatrix("matrix must be square".into()));
        }
        let n = m.nrows();
        Self::from_triplets(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, m[(i, j)])))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n, self.n);
        for (i, j, v) in self.triplets() {
            d[(i, j)] = v;
        }
        d
    }

    /// Order of the matrix.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.cols.val.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    /// Row indices and values of column `j`, rows strictly increasing.
    pub fn column(&self, j: usize) -> (&[usize], &[f64]) {
        self.cols.slice(j)
    }

    /// Column indices and values of row `i`, columns strictly increasing.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        match &self.rows {
            Some(rows) => rows.slice(i),
            None => self.cols.slice(i),
        }
    }

    pub fn column_nnz(&self, j: usize) -> usize {
        self.cols.ptr[j + 1] - self.cols.ptr[j]
    }

    pub fn max_column_nnz(&self) -> usize {
        (0..self.n).map(|j| self.column_nnz(j)).max().unwrap_or(0)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (rows, vals) = self.column(j);
        rows.binary_search(&i).map_or(0.0, |p| vals[p])
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.n).all(|j| self.get(j, j) == 1.0)
    }

    /// All stored entries as `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |j| {
            let (rows, vals) = self.column(j);
            rows.iter().zip(vals).map(move |(&i, &v)| (i, j, v))
        })
    }

    /// Sparse `Sᵀ v` for sparse `v` given as parallel index/value slices.
    /// Result is sorted by index with exact zeros removed; costs
    /// `O(mC log(mC))` for `m` non-zeros in `v` and `C` non-zeros per row.
    pub fn transpose_mul_sparse(&self, indices: &[usize], values: &[f64]) -> Vec<(usize, f64)> {
        let mut acc: Vec<(usize, f64)> = Vec::new();
        for (&i, &x) in indices.iter().zip(values) {
            let (cols, vals) = self.row(i);
            acc.extend(cols.iter().zip(vals).map(|(&j, &s)| (j, s * x)));
        }
        acc.sort_by_key(|&(j, _)| j);
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(acc.len());
        for (j, v) in acc {
            match out.last_mut() {
                Some(last) if last.0 == j => last.1 += v,
                _ => out.push((j, v)),
            }
        }
        out.retain(|&(_, v)| v != 0.0);
        out
    }

    /// Hex SHA-256 over the order and the column-major entries. Stable across
    /// platforms; computed once per matrix.
    pub fn checksum(&self) -> &str {
        self.checksum.get_or_init(|| {
            let mut h = Sha256::new();
            h.update((self.n as u64).to_le_bytes());
            for (i, j, v) in self.triplets() {
                h.update((i as u64).to_le_bytes());
                h.update((j as u64).to_le_bytes());
                h.update(v.to_bits().to_le_bytes());
            }
            hex_digest(h)
        })
    }
}

pub(crate) fn hex_digest(h: Sha256) -> String {
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
