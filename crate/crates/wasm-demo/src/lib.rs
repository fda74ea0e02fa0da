//! Browser demo. Each exported function takes plain strings and numbers
//! and returns JSON; an error comes back as `{"error": "..."}`.
//!
//! Term similarity is the edit-distance model, so the demo needs no
//! embedding file.

use serde::Serialize;
use softvsm::invindex::InvertedIndex;
use softvsm::scm::soft_cosine;
use softvsm::simatrix::{build_similarity_edit, sparsify, ColumnOrder, SparsifyConfig};
use softvsm::text::tokenize;
use softvsm::{idf_weights, vectorize, CorpusMatrix, SimilarityMatrix, TermWeights, Vocabulary};
use wasm_bindgen::prelude::*;

/// Parameters of the edit-distance similarity matrix.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub alpha: f64,
    pub beta: f64,
    pub threshold: f64,
    /// Non-zeros kept per column; 0 keeps everything.
    pub max_per_column: usize,
}

fn similarity(vocab: &Vocabulary, p: Params) -> softvsm::Result<SimilarityMatrix> {
    let s = build_similarity_edit(vocab, p.alpha, p.beta, p.threshold)?;
    if p.max_per_column == 0 {
        return Ok(s);
    }
    sparsify(&s, Some(vocab), &SparsifyConfig::new(p.max_per_column).column_order(ColumnOrder::ByIncreasingDocFreq))
}

#[derive(Debug, Serialize)]
pub struct Heatmap {
    pub terms: Vec<String>,
    /// Row-major `terms.len()²` similarities.
    pub values: Vec<f64>,
    pub nnz: usize,
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub cosine: f64,
    pub soft_cosine: f64,
    pub matrix: Heatmap,
}

#[derive(Debug, Serialize)]
pub struct Hit {
    pub rank: usize,
    pub line: usize,
    pub text: String,
    pub score: f64,
}

fn heatmap(vocab: &Vocabulary, s: &SimilarityMatrix) -> Heatmap {
    Heatmap { terms: vocab.terms().to_vec(), values: s.to_dense().as_slice().to_vec(), nnz: s.nnz() }
}

/// Ordinary and soft cosine of two texts under unit weights.
pub fn compare(a: &str, b: &str, p: Params) -> softvsm::Result<Comparison> {
    let docs = [tokenize(a), tokenize(b)];
    let vocab = Vocabulary::build(docs.iter())?;
    let s = similarity(&vocab, p)?;
    let (x, y) = (vectorize(&docs[0], &vocab), vectorize(&docs[1], &vocab));
    let w = TermWeights::uniform(vocab.len());
    let cosine = soft_cosine(&x, &y, &w, &SimilarityMatrix::identity(vocab.len()))?.value();
    let soft = soft_cosine(&x, &y, &w, &s)?.value();
    Ok(Comparison { cosine, soft_cosine: soft, matrix: heatmap(&vocab, &s) })
}

/// Similarity matrix over the distinct terms of `text`.
pub fn term_matrix(text: &str, p: Params) -> softvsm::Result<Heatmap> {
    let vocab = Vocabulary::build([tokenize(text)])?;
    Ok(heatmap(&vocab, &similarity(&vocab, p)?))
}

/// Ranks the non-empty lines of `corpus` against `query` through an
/// inverted index with IDF weights (weight 1 for terms only in the query).
pub fn search(corpus: &str, query: &str, k: usize, p: Params) -> softvsm::Result<Vec<Hit>> {
    let lines: Vec<(usize, &str, Vec<String>)> =
        corpus.lines().enumerate().map(|(i, l)| (i + 1, l, tokenize(l))).filter(|(_, _, t)| !t.is_empty()).collect();
    let corpus_vocab = Vocabulary::build(lines.iter().map(|(_, _, t)| t))?;
    // Query terms missing from the corpus join with frequency 0, so S can
    // still relate them to corpus terms by spelling.
    let q = tokenize(query);
    let mut entries: Vec<(String, u64)> =
        corpus_vocab.terms().iter().cloned().zip(corpus_vocab.doc_freq().iter().copied()).collect();
    for t in &q {
        if corpus_vocab.index_of(t).is_none() && !entries[corpus_vocab.len()..].iter().any(|(e, _)| e == t) {
            entries.push((t.clone(), 0));
        }
    }
    let vocab = Vocabulary::from_terms(entries, lines.len() as u64)?;
    let s = similarity(&vocab, p)?;
    let w = idf_weights(&vocab, lines.len() as u64)?;
    let ids = lines.iter().map(|(i, _, _)| i.to_string()).collect();
    let cols = lines.iter().map(|(_, _, t)| vectorize(t, &vocab)).collect();
    let docs = CorpusMatrix::new(vocab.len(), ids, cols)?;
    let index = InvertedIndex::build(&docs, &w, &s, None)?;
    let hits = index.search(&vectorize(&q, &vocab), &s, k.max(1))?;
    Ok(hits
        .iter()
        .enumerate()
        .map(|(r, h)| Hit { rank: r + 1, line: lines[h.doc].0, text: lines[h.doc].1.to_owned(), score: h.score })
        .collect())
}

fn to_json<T: Serialize>(r: softvsm::Result<T>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap(),
        Err(e) => serde_json::json!({ "error": e.to_string() }).to_string(),
    }
}

#[wasm_bindgen]
pub fn compare_texts(a: &str, b: &str, alpha: f64, beta: f64, threshold: f64, max_per_column: usize) -> String {
    to_json(compare(a, b, Params { alpha, beta, threshold, max_per_column }))
}

#[wasm_bindgen]
pub fn similarity_heatmap(text: &str, alpha: f64, beta: f64, threshold: f64, max_per_column: usize) -> String {
    to_json(term_matrix(text, Params { alpha, beta, threshold, max_per_column }))
}

#[wasm_bindgen]
pub fn search_corpus(
    corpus: &str,
    query: &str,
    k: usize,
    alpha: f64,
    beta: f64,
    threshold: f64,
    max_per_column: usize,
) -> String {
    to_json(search(corpus, query, k, Params { alpha, beta, threshold, max_per_column }))
}
