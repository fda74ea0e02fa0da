//! Soft inner product and the Soft Cosine Measure.
//!
//! `⟨x, y⟩ = (Wx)ᵀ S (Wy)`, evaluated by visiting only the non-zeros of `x`
//! and, for each, the non-zeros of the matching row of `S`. With at most
//! `C` non-zeros per row this is `O(m·C)` for `m` non-zeros in `x`,
//! independent of the vocabulary size.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;
use crate::vector::{CorpusMatrix, SparseDocVector};
use crate::weights::TermWeights;

/// A soft-cosine score.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SimilarityScore(pub f64);

impl SimilarityScore {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub(crate) fn check_dims(n: usize, dims: &[usize]) -> Result<()> {
    match dims.iter().find(|&&d| d != n) {
        Some(&found) => Err(Error::DimensionMismatch { expected: n, found }),
        None => Ok(()),
    }
}

/// `(Wx)ᵀ S (Wy)`.
pub fn inner_product_sparse(
    x: &SparseDocVector,
    y: &SparseDocVector,
    weights: &TermWeights,
    s: &SimilarityMatrix,
) -> Result<f64> {
    check_dims(s.n(), &[x.dim(), y.dim(), weights.len()])?;
    Ok(inner_unchecked(x, y, weights, s))
}

pub(crate) fn inner_unchecked(
    x: &SparseDocVector,
    y: &SparseDocVector,
    weights: &TermWeights,
    s: &SimilarityMatrix,
) -> f64 {
    let w = weights.as_slice();
    let mut r = 0.0;
    for (i, xi) in x.iter() {
        let (cols, vals) = s.row(i);
        let mut row_sum = 0.0;
        for (&j, &sij) in cols.iter().zip(vals) {
            let yj = y.get(j);
            if yj != 0.0 {
                row_sum += sij * w[j] * yj;
            }
        }
        r += w[i] * xi * row_sum;
    }
    r
}

fn self_norm(x: &SparseDocVector, weights: &TermWeights, s: &SimilarityMatrix) -> f64 {
    inner_unchecked(x, x, weights, s).max(0.0).sqrt()
}

/// `⟨x, y⟩ / (‖x‖ ‖y‖)` with norms induced by `S`.
pub fn soft_cosine(
    x: &SparseDocVector,
    y: &SparseDocVector,
    weights: &TermWeights,
    s: &SimilarityMatrix,
) -> Result<SimilarityScore> {
    check_dims(s.n(), &[x.dim(), y.dim(), weights.len()])?;
    let nx = self_norm(x, weights, s);
    if nx == 0.0 {
        return Err(Error::ZeroNormDocument { doc: "x".into() });
    }
    let ny = self_norm(y, weights, s);
    if ny == 0.0 {
        return Err(Error::ZeroNormDocument { doc: "y".into() });
    }
    Ok(SimilarityScore(inner_unchecked(x, y, weights, s) / (nx * ny)))
}

/// `Sᵀ W x` scattered into a dense buffer (which must be all zero on entry);
/// returns the touched indices so the buffer can be cleared afterwards.
fn scatter_query(x: &SparseDocVector, weights: &TermWeights, s: &SimilarityMatrix, buf: &mut [f64]) -> Vec<usize> {
    let mut touched = Vec::new();
    for (i, xi) in x.iter() {
        let wx = weights.get(i) * xi;
        let (cols, vals) = s.row(i);
        for (&j, &sij) in cols.iter().zip(vals) {
            if buf[j] == 0.0 {
                touched.push(j);
            }
            buf[j] += sij * wx;
        }
    }
    touched
}

fn gram_row(
    x: &SparseDocVector,
    ys: &CorpusMatrix,
    weights: &TermWeights,
    s: &SimilarityMatrix,
    buf: &mut [f64],
) -> Vec<f64> {
    let touched = scatter_query(x, weights, s, buf);
    let row = ys.columns().iter().map(|y| y.iter().map(|(j, yj)| buf[j] * weights.get(j) * yj).sum()).collect();
    for j in touched {
        buf[j] = 0.0;
    }
    row
}

fn check_batch(xs: &CorpusMatrix, ys: &CorpusMatrix, weights: &TermWeights, s: &SimilarityMatrix) -> Result<()> {
    check_dims(s.n(), &[xs.dim(), ys.dim(), weights.len()])
}

fn map_rows<F>(xs: &CorpusMatrix, n: usize, f: F) -> Vec<Vec<f64>>
where
    F: Fn(&SparseDocVector, &mut [f64]) -> Vec<f64> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        xs.columns().par_iter().map_init(|| vec![0.0; n], |buf, x| f(x, buf)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut buf = vec![0.0; n];
        xs.columns().iter().map(|x| f(x, &mut buf)).collect()
    }
}

/// `(WX)ᵀ S (WY)` as a dense `|X| × |Y|` matrix.
pub fn batch_inner(
    xs: &CorpusMatrix,
    ys: &CorpusMatrix,
    weights: &TermWeights,
    s: &SimilarityMatrix,
) -> Result<DenseMatrix> {
    check_batch(xs, ys, weights, s)?;
    let rows = map_rows(xs, s.n(), |x, buf| gram_row(x, ys, weights, s, buf));
    Ok(if rows.is_empty() { DenseMatrix::zeros(0, ys.len()) } else { DenseMatrix::from_rows(&rows) })
}

/// `sqrt(diag((WX)ᵀ S (WX)))`, computed column by column as the row sums of
/// `((WX)ᵀ S) ∘ (WX)ᵀ` without forming the Gram matrix.
pub fn corpus_norms(corpus: &CorpusMatrix, weights: &TermWeights, s: &SimilarityMatrix) -> Result<Vec<f64>> {
    check_dims(s.n(), &[corpus.dim(), weights.len()])?;
    let mut buf = vec![0.0; s.n()];
    corpus
        .iter()
        .map(|(id, x)| {
            let touched = scatter_query(x, weights, s, &mut buf);
            let sq: f64 = x.iter().map(|(j, xj)| buf[j] * weights.get(j) * xj).sum();
            for j in touched {
                buf[j] = 0.0;
            }
            if sq > 0.0 {
                Ok(sq.sqrt())
            } else {
                Err(Error::ZeroNormDocument { doc: id.to_owned() })
            }
        })
        .collect()
}

/// Soft cosine of every pair, as a dense `|X| × |Y|` matrix.
pub fn batch_scm(
    xs: &CorpusMatrix,
    ys: &CorpusMatrix,
    weights: &TermWeights,
    s: &SimilarityMatrix,
) -> Result<DenseMatrix> {
    check_batch(xs, ys, weights, s)?;
    let nx = corpus_norms(xs, weights, s)?;
    let ny = corpus_norms(ys, weights, s)?;
    let mut out = batch_inner(xs, ys, weights, s)?;
    for (i, &a) in nx.iter().enumerate() {
        for (v, &b) in out.row_mut(i).iter_mut().zip(&ny) {
            *v /= a * b;
        }
    }
    Ok(out)
}
