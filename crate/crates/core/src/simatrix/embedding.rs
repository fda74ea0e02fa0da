use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};

/// Pretrained term embeddings sharing one dimension.
#[derive(Debug, Clone, Default)]
pub struct Embeddings {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl Embeddings {
    pub fn new(dim: usize) -> Self {
        Self { dim, vectors: HashMap::new() }
    }

    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (String, Vec<f64>)>) -> Result<Self> {
        let mut e = Self::new(dim);
        for (term, v) in pairs {
            e.insert(term, v)?;
        }
        Ok(e)
    }

    pub fn insert(&mut self, term: String, v: Vec<f64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::EmbeddingDimension { term, expected: self.dim, found: v.len() });
        }
        self.vectors.insert(term, v);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, term: &str) -> Option<&[f64]> {
        self.vectors.get(term).map(Vec::as_slice)
    }

    /// Reads the word2vec text format: a `count dim` header, then one term
    /// followed by `dim` reals per line.
    pub fn read_word2vec(reader: impl Read, path: &Path) -> Result<Self> {
        let mut lines = BufReader::new(reader).lines();
        let header = lines.next().ok_or_else(|| Error::parse(path, 1, "missing header"))??;
        let mut it = header.split_whitespace();
        let count: usize =
            it.next().and_then(|t| t.parse().ok()).ok_or_else(|| Error::parse(path, 1, "bad vector count"))?;
        let dim: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::parse(path, 1, "bad dimension"))?;
        let mut e = Self::new(dim);
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            let mut it = line.split_whitespace();
            let Some(term) = it.next() else { continue };
            let v = it
                .map(str::parse::<f64>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(path, lineno + 2, "bad vector component"))?;
            e.insert(term.to_lowercase(), v)?;
        }
        if e.len() != count {
            return Err(Error::parse(path, 1, format!("header declares {count} vectors, found {}", e.len())));
        }
        Ok(e)
    }

    pub fn load_word2vec(path: &Path) -> Result<Self> {
        Self::read_word2vec(std::fs::File::open(path)?, path)
    }
}
