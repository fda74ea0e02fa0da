use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Bidirectional term/index map with document frequencies.
///
/// Terms are indexed in order of first appearance in the corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index_of: HashMap<String, usize>,
    doc_freq: Vec<u64>,
    pub(crate) num_docs: u64,
}

impl Vocabulary {
    /// Builds a vocabulary from tokenized documents.
    pub fn build<D, T>(corpus: impl IntoIterator<Item = D>) -> Result<Self>
    where
        D: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let mut vocab = Vocabulary::default();
        let mut last_seen: Vec<u64> = Vec::new();
        for doc in corpus {
            vocab.num_docs += 1;
            let stamp = vocab.num_docs;
            for tok in doc {
                let tok = tok.as_ref();
                if tok.is_empty() {
                    return Err(Error::InvalidVector("empty token".into()));
                }
                let idx = match vocab.index_of.get(tok) {
                    Some(&i) => i,
                    None => {
                        let i = vocab.terms.len();
                        vocab.terms.push(tok.to_owned());
                        vocab.index_of.insert(tok.to_owned(), i);
                        vocab.doc_freq.push(0);
                        last_seen.push(0);
                        i
                    }
                };
                if last_seen[idx] != stamp {
                    last_seen[idx] = stamp;
                    vocab.doc_freq[idx] += 1;
                }
            }
        }
        if vocab.num_docs == 0 {
            return Err(Error::EmptyCorpus);
        }
        Ok(vocab)
    }

    /// Builds a vocabulary from explicit `(term, doc_freq)` pairs.
    pub fn from_terms(entries: impl IntoIterator<Item = (String, u64)>, num_docs: u64) -> Result<Self> {
        let mut vocab = Vocabulary { num_docs, ..Default::default() };
        for (term, df) in entries {
            if term.is_empty() || term.chars().any(|c| c == '\t' || c == '\n') {
                return Err(Error::InvalidVector(format!("invalid term {term:?}")));
            }
            if vocab.index_of.contains_key(&term) {
                return Err(Error::InvalidVector(format!("duplicate term {term:?}")));
            }
            vocab.index_of.insert(term.clone(), vocab.terms.len());
            vocab.terms.push(term);
            vocab.doc_freq.push(df);
        }
        Ok(vocab)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term(&self, index: usize) -> Option<&str> {
        self.terms.get(index).map(String::as_str)
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index_of.get(term).copied()
    }

    pub fn doc_freq(&self) -> &[u64] {
        &self.doc_freq
    }

    /// Number of documents the frequencies were counted over. Zero when the
    /// vocabulary was loaded without that information.
    pub fn num_docs(&self) -> u64 {
        self.num_docs
    }

    /// Reads the tab-separated `term<TAB>doc_freq` format: one term per
    /// line, line `i + 1` holding term `i`. The file does not record the
    /// corpus size, so [`Vocabulary::num_docs`] is zero afterwards.
    pub fn read(reader: impl Read, path: &Path) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let (term, df) =
                line.split_once('\t').ok_or_else(|| Error::parse(path, lineno + 1, "expected term<TAB>doc_freq"))?;
            let df = df.trim().parse().map_err(|_| Error::parse(path, lineno + 1, "bad document frequency"))?;
            entries.push((term.to_owned(), df));
        }
        Self::from_terms(entries, 0)
    }

    pub fn write(&self, mut out: impl Write) -> Result<()> {
        let mut buf = String::new();
        for (term, df) in self.terms.iter().zip(&self.doc_freq) {
            writeln!(buf, "{term}\t{df}").unwrap();
        }
        out.write_all(buf.as_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read(std::fs::File::open(path)?, path)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.write(std::io::BufWriter::new(std::fs::File::create(path)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;

    #[test]
    fn first_appearance_order_and_doc_freq() {
        let vocab = Vocabulary::build([tokenize("a a b"), tokenize("b c")]).unwrap();
        assert_eq!(vocab.terms(), ["a", "b", "c"]);
        assert_eq!(vocab.doc_freq(), [1, 2, 1]);
        assert_eq!(vocab.num_docs(), 2);
    }

    #[test]
    fn single_document_counts_documents_not_occurrences() {
        let vocab = Vocabulary::build([tokenize("a a b")]).unwrap();
        assert_eq!(vocab.len(), 2);
        assert_eq!(vocab.doc_freq(), [1, 1]);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let docs: Vec<Vec<String>> = Vec::new();
        assert!(matches!(Vocabulary::build(docs), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn file_round_trip_keeps_bijection() {
        let vocab = Vocabulary::build([tokenize("x y z"), tokenize("z w i'")]).unwrap();
        let mut buf = Vec::new();
        vocab.write(&mut buf).unwrap();
        let back = Vocabulary::read(&buf[..], Path::new("mem")).unwrap();
        assert_eq!(back.terms(), vocab.terms());
        assert_eq!(back.doc_freq(), vocab.doc_freq());
        assert_eq!(buf, b"x\t1\ny\t1\nz\t2\nw\t1\ni'\t1\n");
        for (i, t) in back.terms().iter().enumerate() {
            assert_eq!(back.index_of(t), Some(i));
        }
    }

    #[test]
    fn rejects_duplicate_terms() {
        let err = Vocabulary::from_terms([("a".to_string(), 1), ("a".to_string(), 1)], 1);
        assert!(err.is_err());
    }
}
