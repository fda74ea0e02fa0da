#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;
use softvsm::simatrix::{sparsify, ColumnOrder, Dominance, SparsifyConfig};
use softvsm::{CorpusMatrix, SimilarityMatrix, SparseDocVector, TermWeights};

/// Random sparse document with `m` distinct terms and integer counts 1..=3.
pub fn random_doc(n: usize, m: usize, rng: &mut impl Rng) -> SparseDocVector {
    let mut idx = sample(rng, n, m.min(n)).into_vec();
    idx.sort_unstable();
    SparseDocVector::new(n, idx.into_iter().map(|i| (i, rng.gen_range(1..=3) as f64))).unwrap()
}

pub fn random_weights(n: usize, rng: &mut impl Rng) -> TermWeights {
    TermWeights::new((0..n).map(|_| rng.gen_range(0.1..3.0)).collect()).unwrap()
}

/// Arbitrary real matrix (values in [-1, 1], possibly asymmetric) with at
/// most `c` non-zeros per column.
pub fn random_arbitrary(n: usize, c: usize, rng: &mut impl Rng) -> SimilarityMatrix {
    let mut t = Vec::new();
    for j in 0..n {
        let k = rng.gen_range(1..=c.min(n));
        for i in sample(rng, n, k) {
            t.push((i, j, rng.gen_range(-1.0..1.0)));
        }
    }
    SimilarityMatrix::from_triplets(n, t).unwrap()
}

/// Symmetric non-negative unit-diagonal matrix with at most `c` non-zeros
/// per column, produced by the greedy symmetric sparsifier from random pairs.
pub fn random_similarity(n: usize, c: usize, pairs_per_col: usize, rng: &mut impl Rng) -> SimilarityMatrix {
    let mut t: Vec<_> = (0..n).map(|i| (i, i, 1.0)).collect();
    let mut seen = std::collections::HashSet::new();
    for j in 0..n {
        for _ in 0..pairs_per_col {
            let i = rng.gen_range(0..n);
            if i != j && seen.insert((i.min(j), i.max(j))) {
                let v = rng.gen_range(0.05..1.0);
                t.push((i, j, v));
                t.push((j, i, v));
            }
        }
    }
    let s = SimilarityMatrix::from_triplets(n, t).unwrap();
    sparsify(&s, None, &SparsifyConfig::new(c).column_order(ColumnOrder::AsIs)).unwrap()
}

/// Strictly diagonally dominant symmetric matrix with mixed-sign entries.
pub fn random_dominant(n: usize, density: f64, rng: &mut impl Rng) -> SimilarityMatrix {
    let mut t: Vec<_> = (0..n).map(|i| (i, i, 1.0)).collect();
    for j in 0..n {
        for i in j + 1..n {
            if rng.gen_bool(density) {
                let v = rng.gen_range(-1.0..1.0);
                t.push((i, j, v));
                t.push((j, i, v));
            }
        }
    }
    let s = SimilarityMatrix::from_triplets(n, t).unwrap();
    let cfg = SparsifyConfig::new(n).column_order(ColumnOrder::AsIs).dominance(Dominance::StrictDiagonal);
    sparsify(&s, None, &cfg).unwrap()
}

pub fn random_corpus(n: usize, docs: usize, max_m: usize, rng: &mut impl Rng) -> CorpusMatrix {
    let cols = (0..docs).map(|_| random_doc(n, rng.gen_range(1..=max_m), rng)).collect();
    CorpusMatrix::with_numbered_ids(n, cols).unwrap()
}

/// Dense triple product `(Wx)ᵀ S (Wy)` and the matching sum of absolute
/// summands (the scale for relative comparisons).
pub fn dense_inner(x: &SparseDocVector, y: &SparseDocVector, w: &TermWeights, s: &SimilarityMatrix) -> (f64, f64) {
    let n = s.n();
    let sd = s.to_dense();
    let wx: Vec<f64> = x.to_dense().iter().zip(w.as_slice()).map(|(a, b)| a * b).collect();
    let wy: Vec<f64> = y.to_dense().iter().zip(w.as_slice()).map(|(a, b)| a * b).collect();
    let (mut r, mut scale) = (0.0, 0.0);
    for i in 0..n {
        if wx[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            let t = wx[i] * sd[(i, j)] * wy[j];
            r += t;
            scale += t.abs();
        }
    }
    (r, scale)
}

pub fn dense_scm(x: &SparseDocVector, y: &SparseDocVector, w: &TermWeights, s: &SimilarityMatrix) -> f64 {
    let xy = dense_inner(x, y, w, s).0;
    let xx = dense_inner(x, x, w, s).0;
    let yy = dense_inner(y, y, w, s).0;
    xy / (xx.sqrt() * yy.sqrt())
}

/// True when ordering `items` by `score` descending (ties by index) visits
/// `reference` values in non-increasing order, up to `tol`.
pub fn same_ranking(reference: &[f64], score: &[f64], tol: f64) -> bool {
    let mut order: Vec<usize> = (0..score.len()).collect();
    order.sort_by(|&a, &b| score[b].partial_cmp(&score[a]).unwrap().then(a.cmp(&b)));
    order.windows(2).all(|w| reference[w[1]] <= reference[w[0]] + tol)
}
