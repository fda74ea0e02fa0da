//! Term-similarity matrix construction and sparsification.

mod edit;
mod embedding;
mod sparsify;

pub use edit::{edit_similarity, levenshtein, normalized_similarity};
pub use embedding::Embeddings;
pub use sparsify::{
    is_strictly_diagonally_dominant, sparsify, ColumnOrder, Dominance, SparsifyConfig, Strategy, DOMINANCE_MARGIN,
};

use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;
use crate::vocab::Vocabulary;

pub const DEFAULT_EDIT_ALPHA: f64 = 0.8;
pub const DEFAULT_EDIT_BETA: f64 = 5.0;

/// Where term-to-term similarities come from.
#[derive(Debug, Clone)]
pub enum SimilaritySource {
    Embedding(Embeddings),
    EditDistance { alpha: f64, beta: f64 },
    UserSupplied(SimilarityMatrix),
}

impl SimilaritySource {
    pub fn build(&self, vocab: &Vocabulary, threshold: f64) -> Result<SimilarityMatrix> {
        match self {
            SimilaritySource::Embedding(e) => build_similarity_embedding(vocab, e, threshold),
            SimilaritySource::EditDistance { alpha, beta } => build_similarity_edit(vocab, *alpha, *beta, threshold),
            SimilaritySource::UserSupplied(s) => {
                if s.n() != vocab.len() {
                    return Err(Error::DimensionMismatch { expected: vocab.len(), found: s.n() });
                }
                Ok(s.clone())
            }
        }
    }
}

/// Collects the strictly-upper pairs `(i, j)` with similarity kept by
/// `score`, mirrored, plus a unit diagonal.
fn symmetric_from_pairs<F>(n: usize, score: F) -> Result<SimilarityMatrix>
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    let upper =
        |i: usize| -> Vec<(usize, usize, f64)> { (i + 1..n).filter_map(|j| score(i, j).map(|v| (i, j, v))).collect() };
    #[cfg(feature = "parallel")]
    let pairs: Vec<_> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().flat_map_iter(upper).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let pairs: Vec<_> = (0..n).flat_map(upper).collect();

    let triplets = (0..n).map(|i| (i, i, 1.0)).chain(pairs.iter().flat_map(|&(i, j, v)| [(i, j, v), (j, i, v)]));
    SimilarityMatrix::from_triplets(n, triplets)
}

fn check_threshold(threshold: f64) -> Result<()> {
    if (0.0..=1.0).contains(&threshold) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("threshold must lie in [0, 1], got {threshold}")))
    }
}

/// `s_ij = max(0, cos(e_i, e_j))` where at least `threshold`. Terms without
/// an embedding (or with a zero embedding) are similar only to themselves.
pub fn build_similarity_embedding(
    vocab: &Vocabulary,
    embeddings: &Embeddings,
    threshold: f64,
) -> Result<SimilarityMatrix> {
    check_threshold(threshold)?;
    let unit: Vec<Option<Vec<f64>>> = vocab
        .terms()
        .iter()
        .map(|t| {
            embeddings.get(t).and_then(|v| {
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                (norm > 0.0).then(|| v.iter().map(|x| x / norm).collect())
            })
        })
        .collect();
    symmetric_from_pairs(vocab.len(), |i, j| {
        let (a, b) = (unit[i].as_ref()?, unit[j].as_ref()?);
        let cos = crate::dense::dot(a, b).clamp(0.0, 1.0);
        (cos > 0.0 && cos >= threshold).then_some(cos)
    })
}

/// `s_ij = alpha · (1 − lev(t_i, t_j) / max(|t_i|, |t_j|))^beta` where at
/// least `threshold`.
pub fn build_similarity_edit(vocab: &Vocabulary, alpha: f64, beta: f64, threshold: f64) -> Result<SimilarityMatrix> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidConfig(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidConfig(format!("beta must be positive, got {beta}")));
    }
    check_threshold(threshold)?;
    let terms = vocab.terms();
    symmetric_from_pairs(terms.len(), |i, j| {
        let s = edit_similarity(&terms[i], &terms[j], alpha, beta);
        (s > 0.0 && s >= threshold).then_some(s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vocab_of(text: &str) -> Vocabulary {
        Vocabulary::build([tokenize(text)]).unwrap()
    }

    #[test]
    fn identical_embeddings_are_fully_similar() {
        let vocab = vocab_of("a b");
        let e = Embeddings::from_pairs(2, [("a".into(), vec![0.3, 0.4]), ("b".into(), vec![0.3, 0.4])]).unwrap();
        let s = build_similarity_embedding(&vocab, &e, 0.0).unwrap();
        assert!((s.get(0, 1) - 1.0).abs() < 1e-15);
        assert!(s.is_symmetric() && s.is_nonnegative() && s.has_unit_diagonal());
    }

    #[test]
    fn orthogonal_embeddings_give_identity() {
        let vocab = vocab_of("a b c");
        let e = Embeddings::from_pairs(
            3,
            [("a".into(), vec![1.0, 0.0, 0.0]), ("b".into(), vec![0.0, 2.0, 0.0]), ("c".into(), vec![0.0, 0.0, 3.0])],
        )
        .unwrap();
        assert_eq!(build_similarity_embedding(&vocab, &e, 0.0).unwrap(), SimilarityMatrix::identity(3));
    }

    #[test]
    fn negative_cosines_are_clamped_and_missing_terms_isolated() {
        let vocab = vocab_of("a b c");
        let e = Embeddings::from_pairs(2, [("a".into(), vec![1.0, 0.0]), ("b".into(), vec![-1.0, 0.1])]).unwrap();
        let s = build_similarity_embedding(&vocab, &e, 0.0).unwrap();
        assert_eq!(s, SimilarityMatrix::identity(3));
    }

    #[test]
    fn random_embeddings_match_dense_cosine_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let terms: Vec<String> = (0..10).map(|i| format!("w{i}")).collect();
        let vocab = Vocabulary::build([terms.clone()]).unwrap();
        let vecs: Vec<Vec<f64>> = (0..10)
            .map(|_| {
                let v: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.into_iter().map(|x| x / n).collect()
            })
            .collect();
        let e = Embeddings::from_pairs(5, terms.iter().cloned().zip(vecs.clone())).unwrap();
        let s = build_similarity_embedding(&vocab, &e, 0.0).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let dot: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                let expected = if i == j { 1.0 } else { dot.max(0.0) };
                assert!((s.get(i, j) - expected).abs() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn edit_similarity_matrix_values() {
        let vocab = vocab_of("dead killed");
        let s = build_similarity_edit(&vocab, 1.0, 1.0, 0.0).unwrap();
        assert!((s.get(0, 1) - 1.0 / 6.0).abs() < 1e-15);
        let s = build_similarity_edit(&vocab, 0.8, 2.0, 0.0).unwrap();
        assert!((s.get(1, 0) - 0.8 / 36.0).abs() < 1e-15);
        assert!(s.has_unit_diagonal() && s.is_symmetric());
    }

    #[test]
    fn threshold_one_gives_identity() {
        let vocab = vocab_of("when antony found julius caesar dead i did enact");
        let s = build_similarity_edit(&vocab, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(s, SimilarityMatrix::identity(vocab.len()));
    }

    #[test]
    fn raising_threshold_never_adds_entries() {
        let vocab = vocab_of("cat cats hat hats chat that what cart card care");
        let mut prev = usize::MAX;
        for t in [0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0] {
            let nnz = build_similarity_edit(&vocab, 1.0, 1.0, t).unwrap().nnz();
            assert!(nnz <= prev);
            prev = nnz;
        }
    }

    #[test]
    fn invalid_parameters() {
        let vocab = vocab_of("a b");
        assert!(build_similarity_edit(&vocab, 0.0, 1.0, 0.0).is_err());
        assert!(build_similarity_edit(&vocab, 1.0, 0.0, 0.0).is_err());
        assert!(build_similarity_edit(&vocab, 1.0, 1.0, 1.5).is_err());
    }
}
