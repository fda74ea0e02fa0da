use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vocab::Vocabulary;

/// Sparse non-negative document coordinates, sorted by term index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseDocVector {
    dim: usize,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseDocVector {
    pub fn empty(dim: usize) -> Self {
        Self { dim, indices: Vec::new(), values: Vec::new() }
    }

    /// Creates a vector from entries that are already sorted by index.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut v = Self::empty(dim);
        for (index, value) in entries {
            if index >= dim {
                return Err(Error::InvalidVector(format!("index {index} out of range for dimension {dim}")));
            }
            if v.indices.last().is_some_and(|&last| last >= index) {
                return Err(Error::InvalidVector("indices must be strictly increasing".into()));
            }
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidVector(format!(
                    "value at index {index} must be finite and positive, got {value}"
                )));
            }
            v.indices.push(index);
            v.values.push(value);
        }
        Ok(v)
    }

    /// Creates a vector from unordered entries, summing duplicates.
    pub fn from_unsorted(dim: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
        for (i, v) in entries {
            *acc.entry(i).or_default() += v;
        }
        Self::new(dim, acc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored non-zeros.
    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }

    /// Coordinate at `index`, zero when absent. Binary search over the support.
    pub fn get(&self, index: usize) -> f64 {
        match self.indices.binary_search(&index) {
            Ok(pos) => self.values[pos],
            Err(_) => 0.0,
        }
    }

    /// Multiplies every coordinate by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.dim, self.iter().map(|(i, v)| (i, v * factor)))
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, v) in self.iter() {
            out[i] = v;
        }
        out
    }
}

/// Term-frequency coordinates of a tokenized document. Out-of-vocabulary
/// tokens are dropped.
pub fn vectorize<T: AsRef<str>>(doc: &[T], vocab: &Vocabulary) -> SparseDocVector {
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    for tok in doc {
        if let Some(i) = vocab.index_of(tok.as_ref()) {
            *counts.entry(i).or_default() += 1.0;
        }
    }
    SparseDocVector {
        dim: vocab.len(),
        indices: counts.keys().copied().collect(),
        values: counts.values().copied().collect(),
    }
}

/// Inverse of [`vectorize`] up to token order: each term repeated by its
/// (integral) count.
pub fn detokenize(v: &SparseDocVector, vocab: &Vocabulary) -> Vec<String> {
    v.iter()
        .flat_map(|(i, c)| {
            let term = vocab.term(i).unwrap_or_default().to_owned();
            std::iter::repeat_n(term, c.round() as usize)
        })
        .collect()
}

/// Documents as columns sharing one dimension, with unique external ids.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusMatrix {
    dim: usize,
    columns: Vec<SparseDocVector>,
    doc_ids: Vec<String>,
}

impl CorpusMatrix {
    pub fn new(dim: usize, doc_ids: Vec<String>, columns: Vec<SparseDocVector>) -> Result<Self> {
        if doc_ids.len() != columns.len() {
            return Err(Error::DimensionMismatch { expected: columns.len(), found: doc_ids.len() });
        }
        if let Some(col) = columns.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: col.dim() });
        }
        let mut seen = HashSet::new();
        if let Some(dup) = doc_ids.iter().find(|id| !seen.insert(id.as_str())) {
            return Err(Error::InvalidVector(format!("duplicate document id {dup:?}")));
        }
        Ok(Self { dim, columns, doc_ids })
    }

    /// Corpus with ids `"0"`, `"1"`, ... in column order.
    pub fn with_numbered_ids(dim: usize, columns: Vec<SparseDocVector>) -> Result<Self> {
        let ids = (0..columns.len()).map(|i| i.to_string()).collect();
        Self::new(dim, ids, columns)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[SparseDocVector] {
        &self.columns
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SparseDocVector)> {
        self.doc_ids.iter().map(String::as_str).zip(&self.columns)
    }
}
