use crate::error::{Error, Result};
use crate::vocab::Vocabulary;

/// Diagonal of the term-weighting matrix: one non-negative weight per term.
#[derive(Debug, Clone, PartialEq)]
pub struct TermWeights {
    w: Vec<f64>,
}

impl TermWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if let Some((i, x)) = w.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidVector(format!("weight {i} must be finite and non-negative, got {x}")));
        }
        Ok(Self { w })
    }

    pub fn uniform(n: usize) -> Self {
        Self { w: vec![1.0; n] }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    pub fn get(&self, i: usize) -> f64 {
        self.w[i]
    }

    /// Returns a copy with weight `value` for term `i`.
    pub fn with(mut self, i: usize, value: f64) -> Result<Self> {
        if i >= self.w.len() {
            return Err(Error::DimensionMismatch { expected: self.w.len(), found: i + 1 });
        }
        self.w[i] = value;
        Self::new(self.w)
    }
}

/// `w[i] = 1 + ln(total_docs / doc_freq[i])`, or 1 for terms never seen.
pub fn idf_weights(vocab: &Vocabulary, total_docs: u64) -> Result<TermWeights> {
    if total_docs == 0 {
        return Err(Error::ZeroTotalDocs);
    }
    let w = vocab
        .doc_freq()
        .iter()
        .map(|&df| {
            if df == 0 {
                Ok(1.0)
            } else if df > total_docs {
                Err(Error::InvalidConfig(format!("document frequency {df} exceeds total document count {total_docs}")))
            } else {
                Ok(1.0 + (total_docs as f64 / df as f64).ln())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TermWeights { w })
}
