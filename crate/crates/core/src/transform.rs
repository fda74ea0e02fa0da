//! Coordinate transforms that let plain dot-product or cosine nearest-neighbour
//! backends rank documents by the soft inner product or the soft cosine.
//!
//! Queries absorb `S` (`x' = Sᵀ W x`); stored documents only see `W` and a
//! normalization, so swapping `S` means re-transforming queries alone for the
//! dot-product variant.

use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;
use crate::scm::{check_dims, inner_unchecked};
use crate::vector::SparseDocVector;
use crate::weights::TermWeights;

/// Largest accepted `y'ᵀy'` before the augmented coordinate is undefined.
pub const AUGMENTATION_SLACK: f64 = 1e-12;

/// Sparse real vector, sorted by index. Coordinates may be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Coords {
    pub dim: usize,
    pub entries: Vec<(usize, f64)>,
}

impl Coords {
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &(i, v) in &self.entries {
            out[i] = v;
        }
        out
    }

    /// Merge-join dot product.
    pub fn dot(&self, other: &Coords) -> f64 {
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut acc = 0.0;
        while let (Some(&&(i, x)), Some(&&(j, y))) = (a.peek(), b.peek()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    acc += x * y;
                    a.next();
                    b.next();
                }
            }
        }
        acc
    }

    pub fn cosine(&self, other: &Coords) -> f64 {
        self.dot(other) / (self.norm() * other.norm())
    }
}

/// Transformed query. `augmented` marks the `(n+1)`-dimensional variant
/// whose last coordinate is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryTransformed {
    pub coords: Coords,
    pub augmented: bool,
}

/// Transformed document. In the augmented variant the last coordinate
/// `√(1 − y'ᵀy')` pads the vector to unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct DocTransformed {
    pub coords: Coords,
    pub augmented: bool,
}

fn weighted(x: &SparseDocVector, weights: &TermWeights) -> Vec<(usize, f64)> {
    x.iter().map(|(i, v)| (i, weights.get(i) * v)).filter(|&(_, v)| v != 0.0).collect()
}

/// `W y` as sparse coordinates.
pub fn doc_for_dot(y: &SparseDocVector, weights: &TermWeights) -> Result<DocTransformed> {
    check_dims(weights.len(), &[y.dim()])?;
    Ok(DocTransformed { coords: Coords { dim: y.dim(), entries: weighted(y, weights) }, augmented: false })
}

/// `Sᵀ W x`: its dot product with `W y` is the soft inner product.
pub fn query_for_dot(x: &SparseDocVector, weights: &TermWeights, s: &SimilarityMatrix) -> Result<QueryTransformed> {
    check_dims(s.n(), &[x.dim(), weights.len()])?;
    let wx = weighted(x, weights);
    if wx.is_empty() {
        return Err(Error::ZeroQuery);
    }
    let (idx, val): (Vec<usize>, Vec<f64>) = wx.into_iter().unzip();
    Ok(QueryTransformed {
        coords: Coords { dim: s.n(), entries: s.transpose_mul_sparse(&idx, &val) },
        augmented: false,
    })
}

/// `W y / √((Wy)ᵀ S (Wy))`: dot products with [`query_for_dot`] order
/// documents exactly as the soft cosine does.
pub fn doc_for_scm(y: &SparseDocVector, weights: &TermWeights, s: &SimilarityMatrix) -> Result<DocTransformed> {
    check_dims(s.n(), &[y.dim(), weights.len()])?;
    let sq = inner_unchecked(y, y, weights, s);
    if sq.is_nan() || sq <= 0.0 {
        return Err(Error::ZeroNormDocument { doc: "y".into() });
    }
    let norm = sq.sqrt();
    Ok(DocTransformed {
        coords: Coords {
            dim: y.dim(),
            entries: weighted(y, weights).into_iter().map(|(i, v)| (i, v / norm)).collect(),
        },
        augmented: false,
    })
}

/// `[Sᵀ W x / ‖Sᵀ W x‖₂, 0]` in `n + 1` dimensions, unit norm.
pub fn query_for_cosine(x: &SparseDocVector, weights: &TermWeights, s: &SimilarityMatrix) -> Result<QueryTransformed> {
    let q = query_for_dot(x, weights, s)?;
    let norm = q.coords.norm();
    if norm == 0.0 {
        return Err(Error::ZeroQuery);
    }
    Ok(QueryTransformed {
        coords: Coords { dim: s.n() + 1, entries: q.coords.entries.into_iter().map(|(i, v)| (i, v / norm)).collect() },
        augmented: true,
    })
}

/// `[y', √(1 − y'ᵀy')]` with `y'` from [`doc_for_scm`], unit norm.
///
/// Only non-negative coordinates on a non-empty support are required; the
/// bound `y'ᵀy' ≤ 1` that makes the last coordinate real is checked directly
/// and fails with [`Error::AugmentationUndefined`].
pub fn doc_for_cosine(y: &SparseDocVector, weights: &TermWeights, s: &SimilarityMatrix) -> Result<DocTransformed> {
    let d = doc_for_scm(y, weights, s)?;
    let norm_sq: f64 = d.coords.entries.iter().map(|(_, v)| v * v).sum();
    if norm_sq > 1.0 + AUGMENTATION_SLACK {
        return Err(Error::AugmentationUndefined { norm_sq });
    }
    let last = (1.0 - norm_sq).max(0.0).sqrt();
    let mut entries = d.coords.entries;
    if last > 0.0 {
        entries.push((s.n(), last));
    }
    Ok(DocTransformed { coords: Coords { dim: s.n() + 1, entries }, augmented: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(dim: usize, e: &[(usize, f64)]) -> SparseDocVector {
        SparseDocVector::new(dim, e.iter().copied()).unwrap()
    }

    #[test]
    fn identity_matrix_reduces_to_weighting() {
        let x = v(4, &[(0, 1.0), (2, 3.0)]);
        let w = TermWeights::new(vec![2.0, 1.0, 1.0, 1.0]).unwrap();
        let s = SimilarityMatrix::identity(4);
        let q = query_for_dot(&x, &w, &s).unwrap();
        assert_eq!(q.coords.entries, vec![(0, 2.0), (2, 3.0)]);
        let d = doc_for_scm(&x, &w, &s).unwrap();
        let n = 13f64.sqrt();
        assert_eq!(d.coords.entries, vec![(0, 2.0 / n), (2, 3.0 / n)]);
    }

    #[test]
    fn self_similarity_four_halves_the_document() {
        // (Wy)ᵀ S (Wy) = 1 + 1 + 2·1 = 4 for y = e0 + e1 with s01 = 1.
        let s = SimilarityMatrix::from_triplets(2, [(0, 0, 1.0), (1, 1, 1.0), (0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let y = v(2, &[(0, 1.0), (1, 1.0)]);
        let d = doc_for_scm(&y, &TermWeights::uniform(2), &s).unwrap();
        assert_eq!(d.coords.entries, vec![(0, 0.5), (1, 0.5)]);
    }

    #[test]
    fn augmented_vectors_are_unit_norm() {
        let s = SimilarityMatrix::from_triplets(3, [(0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0), (0, 1, 0.6), (1, 0, 0.6)])
            .unwrap();
        let w = TermWeights::uniform(3);
        let y = v(3, &[(0, 1.0), (1, 2.0)]);
        let d = doc_for_cosine(&y, &w, &s).unwrap();
        assert_eq!(d.coords.dim, 4);
        assert!((d.coords.norm() - 1.0).abs() < 1e-12);
        assert!(d.coords.entries.last().unwrap().0 == 3);
        let q = query_for_cosine(&y, &w, &s).unwrap();
        assert!((q.coords.norm() - 1.0).abs() < 1e-12);
        assert!(q.coords.entries.iter().all(|&(i, _)| i < 3));
    }

    #[test]
    fn single_term_query_is_basis_vector() {
        let q = query_for_cosine(&v(3, &[(1, 5.0)]), &TermWeights::uniform(3), &SimilarityMatrix::identity(3)).unwrap();
        assert_eq!(q.coords.to_dense(), vec![0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn identity_doc_has_zero_augmentation() {
        let d = doc_for_cosine(&v(3, &[(0, 3.0), (2, 4.0)]), &TermWeights::uniform(3), &SimilarityMatrix::identity(3))
            .unwrap();
        assert_eq!(d.coords.to_dense(), vec![0.6, 0.0, 0.8, 0.0]);
    }

    #[test]
    fn negative_similarity_breaks_augmentation() {
        let s = SimilarityMatrix::from_triplets(2, [(0, 0, 1.0), (1, 1, 1.0), (0, 1, -0.9), (1, 0, -0.9)]).unwrap();
        let y = v(2, &[(0, 1.0), (1, 1.0)]);
        assert!(matches!(doc_for_cosine(&y, &TermWeights::uniform(2), &s), Err(Error::AugmentationUndefined { .. })));
    }

    #[test]
    fn zero_query_is_an_error() {
        let s = SimilarityMatrix::identity(2);
        assert!(matches!(
            query_for_dot(&SparseDocVector::empty(2), &TermWeights::uniform(2), &s),
            Err(Error::ZeroQuery)
        ));
        let zero_w = TermWeights::new(vec![0.0, 0.0]).unwrap();
        assert!(query_for_cosine(&v(2, &[(0, 1.0)]), &zero_w, &s).is_err());
    }
}
