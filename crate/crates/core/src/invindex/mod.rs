//! Inverted index with similarity-driven query expansion and exact soft
//! cosine ranking of the expanded candidate set.

mod persist;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;
use crate::scm::{check_dims, corpus_norms, inner_unchecked};
use crate::vector::{CorpusMatrix, SparseDocVector};
use crate::vocab::Vocabulary;
use crate::weights::TermWeights;

pub use persist::FORMAT_VERSION;

/// Documents containing one term, by ascending internal document number.
#[derive(Debug, Clone, PartialEq)]
pub struct Posting {
    pub term: usize,
    pub entries: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchHit {
    /// Internal document number (column of the indexed corpus).
    pub doc: usize,
    pub score: f64,
}

/// Postings, stored document vectors, and per-document soft norms computed
/// under the similarity matrix and weights in force at build time.
#[derive(Debug, Clone)]
pub struct InvertedIndex {
    postings: Vec<Posting>,
    docs: Vec<SparseDocVector>,
    doc_ids: Vec<String>,
    doc_norms: Vec<f64>,
    weights: TermWeights,
    matrix_checksum: String,
    vocab: Option<Vocabulary>,
}

/// Term indices reached from the query's support through `S`: the union of
/// the row patterns of `S` over the query's non-zero terms.
pub fn expand_query(x: &SparseDocVector, s: &SimilarityMatrix) -> Vec<usize> {
    let mut terms: Vec<usize> = x.indices().iter().flat_map(|&i| s.row(i).0.iter().copied()).collect();
    terms.sort_unstable();
    terms.dedup();
    terms
}

fn rank(hits: &mut [SearchHit]) {
    hits.sort_by(|a, b| b.score.partial_cmp(&a.score).unwrap_or(Ordering::Equal).then(a.doc.cmp(&b.doc)));
}

impl InvertedIndex {
    /// Indexes `corpus`. Every document must have a positive soft norm.
    pub fn build(
        corpus: &CorpusMatrix,
        weights: &TermWeights,
        s: &SimilarityMatrix,
        vocab: Option<&Vocabulary>,
    ) -> Result<Self> {
        check_dims(s.n(), &[corpus.dim(), weights.len()])?;
        if let Some(v) = vocab {
            check_dims(s.n(), &[v.len()])?;
        }
        let doc_norms = corpus_norms(corpus, weights, s)?;
        let mut postings: Vec<Posting> = (0..s.n()).map(|term| Posting { term, entries: Vec::new() }).collect();
        for (doc, y) in corpus.columns().iter().enumerate() {
            for (t, tf) in y.iter() {
                postings[t].entries.push((doc, tf));
            }
        }
        Ok(Self {
            postings,
            docs: corpus.columns().to_vec(),
            doc_ids: corpus.doc_ids().to_vec(),
            doc_norms,
            weights: weights.clone(),
            matrix_checksum: s.checksum().to_owned(),
            vocab: vocab.cloned(),
        })
    }

    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    pub fn term_count(&self) -> usize {
        self.postings.len()
    }

    pub fn posting(&self, term: usize) -> &Posting {
        &self.postings[term]
    }

    pub fn doc_id(&self, doc: usize) -> &str {
        &self.doc_ids[doc]
    }

    pub fn doc_norms(&self) -> &[f64] {
        &self.doc_norms
    }

    pub fn weights(&self) -> &TermWeights {
        &self.weights
    }

    pub fn vocabulary(&self) -> Option<&Vocabulary> {
        self.vocab.as_ref()
    }

    pub fn matrix_checksum(&self) -> &str {
        &self.matrix_checksum
    }

    fn check_matrix(&self, s: &SimilarityMatrix) -> Result<()> {
        check_dims(self.term_count(), &[s.n()])?;
        if s.checksum() != self.matrix_checksum {
            return Err(Error::StaleIndex);
        }
        Ok(())
    }

    /// Documents found in the postings of the expanded query terms.
    pub fn candidates(&self, query: &SparseDocVector, s: &SimilarityMatrix) -> Result<Vec<usize>> {
        self.check_matrix(s)?;
        check_dims(self.term_count(), &[query.dim()])?;
        let mut docs: Vec<usize> =
            expand_query(query, s).into_iter().flat_map(|t| self.postings[t].entries.iter().map(|&(d, _)| d)).collect();
        docs.sort_unstable();
        docs.dedup();
        Ok(docs)
    }

    /// Top-`k` documents by soft cosine, descending, ties by ascending
    /// document number. A query whose expansion is empty (all terms out of
    /// vocabulary) returns no hits.
    pub fn search(&self, query: &SparseDocVector, s: &SimilarityMatrix, k: usize) -> Result<Vec<SearchHit>> {
        if k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        let candidates = self.candidates(query, s)?;
        if candidates.is_empty() {
            return Ok(Vec::new());
        }
        let qsq = inner_unchecked(query, query, &self.weights, s);
        if qsq.is_nan() || qsq <= 0.0 {
            return Err(Error::ZeroNormDocument { doc: "query".into() });
        }
        let qnorm = qsq.sqrt();
        let mut hits: Vec<SearchHit> = candidates
            .into_iter()
            .map(|doc| SearchHit {
                doc,
                score: inner_unchecked(query, &self.docs[doc], &self.weights, s) / (qnorm * self.doc_norms[doc]),
            })
            .collect();
        rank(&mut hits);
        hits.truncate(k);
        Ok(hits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;
    use crate::vector::vectorize;

    fn hamlet() -> (Vocabulary, CorpusMatrix) {
        let docs = [
            tokenize("When Antony found Julius Caesar dead"),
            tokenize("I did enact Julius Caesar: I was killed i' the Capitol"),
        ];
        let vocab = Vocabulary::build(docs.iter().cloned()).unwrap();
        let cols = docs.iter().map(|d| vectorize(d, &vocab)).collect();
        let corpus = CorpusMatrix::new(vocab.len(), vec!["d1".into(), "d2".into()], cols).unwrap();
        (vocab, corpus)
    }

    #[test]
    fn postings_of_shared_terms() {
        let (vocab, corpus) = hamlet();
        let s = SimilarityMatrix::identity(vocab.len());
        let idx = InvertedIndex::build(&corpus, &TermWeights::uniform(vocab.len()), &s, Some(&vocab)).unwrap();
        for t in 0..vocab.len() {
            let len = idx.posting(t).entries.len();
            let shared = matches!(vocab.term(t), Some("julius" | "caesar"));
            assert_eq!(len, if shared { 2 } else { 1 });
        }
    }

    #[test]
    fn single_doc_three_terms() {
        let v = SparseDocVector::new(3, [(0, 1.0), (1, 2.0), (2, 1.0)]).unwrap();
        let corpus = CorpusMatrix::with_numbered_ids(3, vec![v]).unwrap();
        let idx =
            InvertedIndex::build(&corpus, &TermWeights::uniform(3), &SimilarityMatrix::identity(3), None).unwrap();
        assert!((0..3).all(|t| idx.posting(t).entries.len() == 1));
    }

    #[test]
    fn hamlet_search_scores() {
        let (vocab, corpus) = hamlet();
        let n = vocab.len();
        let w = TermWeights::uniform(n)
            .with(vocab.index_of("julius").unwrap(), 2.0)
            .unwrap()
            .with(vocab.index_of("caesar").unwrap(), 2.0)
            .unwrap();
        let s = SimilarityMatrix::identity(n);
        let idx = InvertedIndex::build(&corpus, &w, &s, Some(&vocab)).unwrap();
        let hits = idx.search(&corpus.columns()[0], &s, 10).unwrap();
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].doc, 0);
        assert!((hits[0].score - 1.0).abs() < 1e-12);
        assert_eq!(format!("{:.2}", hits[1].score), "0.53");
    }

    #[test]
    fn expansion_with_identity_is_query_support() {
        let x = SparseDocVector::new(5, [(1, 1.0), (3, 2.0)]).unwrap();
        assert_eq!(expand_query(&x, &SimilarityMatrix::identity(5)), vec![1, 3]);
    }

    #[test]
    fn single_term_expansion_is_one_line_of_s() {
        let s = SimilarityMatrix::from_triplets(
            4,
            (0..4).map(|i| (i, i, 1.0)).chain([(2, 0, 0.3), (0, 2, 0.3), (3, 2, 0.1), (2, 3, 0.1)]),
        )
        .unwrap();
        let x = SparseDocVector::new(4, [(2, 1.0)]).unwrap();
        assert_eq!(expand_query(&x, &s), s.column(2).0.to_vec());
    }

    #[test]
    fn oov_query_returns_nothing_and_stale_matrix_is_rejected() {
        let (vocab, corpus) = hamlet();
        let n = vocab.len();
        let s = SimilarityMatrix::identity(n);
        let idx = InvertedIndex::build(&corpus, &TermWeights::uniform(n), &s, None).unwrap();
        let q = vectorize(&tokenize("polonius arras"), &vocab);
        assert!(idx.search(&q, &s, 5).unwrap().is_empty());
        let other =
            SimilarityMatrix::from_triplets(n, (0..n).map(|i| (i, i, 1.0)).chain([(0, 1, 0.5), (1, 0, 0.5)])).unwrap();
        assert!(matches!(idx.search(&corpus.columns()[0], &other, 5), Err(Error::StaleIndex)));
        assert!(idx.search(&corpus.columns()[0], &s, 0).is_err());
    }

    #[test]
    fn zero_norm_doc_is_rejected() {
        let corpus = CorpusMatrix::new(2, vec!["blank".into()], vec![SparseDocVector::empty(2)]).unwrap();
        let err =
            InvertedIndex::build(&corpus, &TermWeights::uniform(2), &SimilarityMatrix::identity(2), None).unwrap_err();
        assert!(matches!(err, Error::ZeroNormDocument { doc } if doc == "blank"));
    }
}
