//! On-disk layout of an index directory:
//!
//! ```text
//! meta.txt       key = value: format_version, doc_count, term_count, matrix_checksum,
//!                vocab_docs (with a vocabulary)
//! vocab.tsv      term<TAB>doc_freq (only when the index carries a vocabulary)
//! postings.tsv   term_index<TAB>doc<TAB>tf, sorted by term then doc
//! norms.tsv      doc<TAB>norm
//! docs.tsv       doc<TAB>external id
//! weights.tsv    term_index<TAB>weight
//! ```
//!
//! Reals are written in shortest round-trip form, so loading reproduces
//! every value bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{InvertedIndex, Posting};
use crate::error::{Error, Result};
use crate::vector::SparseDocVector;
use crate::vocab::Vocabulary;
use crate::weights::TermWeights;

pub const FORMAT_VERSION: u32 = 1;

fn tsv_rows(path: &Path) -> Result<Vec<(usize, Vec<String>)>> {
    let text = fs::read_to_string(path)?;
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| (i + 1, l.split('\t').map(str::to_owned).collect()))
        .collect())
}

fn field<T: std::str::FromStr>(path: &Path, line: usize, fields: &[String], k: usize) -> Result<T> {
    fields
        .get(k)
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::parse(path, line, format!("bad or missing field {}", k + 1)))
}

impl InvertedIndex {
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut meta = String::new();
        writeln!(meta, "format_version = {FORMAT_VERSION}").unwrap();
        writeln!(meta, "doc_count = {}", self.doc_count()).unwrap();
        writeln!(meta, "term_count = {}", self.term_count()).unwrap();
        writeln!(meta, "matrix_checksum = {}", self.matrix_checksum).unwrap();

        if let Some(vocab) = &self.vocab {
            writeln!(meta, "vocab_docs = {}", vocab.num_docs()).unwrap();
        }
        fs::write(dir.join("meta.txt"), meta)?;

        if let Some(vocab) = &self.vocab {
            vocab.save(&dir.join("vocab.tsv"))?;
        }

        let mut postings = String::new();
        for p in &self.postings {
            for &(doc, tf) in &p.entries {
                writeln!(postings, "{}\t{doc}\t{tf:?}", p.term).unwrap();
            }
        }
        fs::write(dir.join("postings.tsv"), postings)?;

        let mut norms = String::new();
        let mut docs = String::new();
        for (doc, (norm, id)) in self.doc_norms.iter().zip(&self.doc_ids).enumerate() {
            writeln!(norms, "{doc}\t{norm:?}").unwrap();
            writeln!(docs, "{doc}\t{id}").unwrap();
        }
        fs::write(dir.join("norms.tsv"), norms)?;
        fs::write(dir.join("docs.tsv"), docs)?;

        let mut weights = String::new();
        for (i, w) in self.weights.as_slice().iter().enumerate() {
            writeln!(weights, "{i}\t{w:?}").unwrap();
        }
        fs::write(dir.join("weights.tsv"), weights)?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let meta_path = dir.join("meta.txt");
        let meta: BTreeMap<String, String> = fs::read_to_string(&meta_path)?
            .lines()
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.trim().to_owned(), v.trim().to_owned()))
            .collect();
        let get = |key: &str| -> Result<&String> {
            meta.get(key).ok_or_else(|| Error::parse(&meta_path, 0, format!("missing key {key}")))
        };
        let num = |key: &str| -> Result<usize> {
            get(key)?.parse().map_err(|_| Error::parse(&meta_path, 0, format!("bad value for {key}")))
        };
        let version = num("format_version")?;
        if version != FORMAT_VERSION as usize {
            return Err(Error::parse(&meta_path, 0, format!("unsupported format version {version}")));
        }
        let doc_count = num("doc_count")?;
        let term_count = num("term_count")?;
        let matrix_checksum = get("matrix_checksum")?.clone();

        let vocab_path = dir.join("vocab.tsv");
        let vocab = if vocab_path.exists() {
            let mut v = Vocabulary::load(&vocab_path)?;
            v.num_docs = num("vocab_docs")? as u64;
            if v.len() != term_count {
                return Err(Error::DimensionMismatch { expected: term_count, found: v.len() });
            }
            Some(v)
        } else {
            None
        };

        let bad = |path: &Path, line: usize, msg: &str| Error::parse(path, line, msg);

        let postings_path = dir.join("postings.tsv");
        let mut postings: Vec<Posting> = (0..term_count).map(|term| Posting { term, entries: Vec::new() }).collect();
        let mut doc_entries: Vec<Vec<(usize, f64)>> = vec![Vec::new(); doc_count];
        for (line, f) in tsv_rows(&postings_path)? {
            let term: usize = field(&postings_path, line, &f, 0)?;
            let doc: usize = field(&postings_path, line, &f, 1)?;
            let tf: f64 = field(&postings_path, line, &f, 2)?;
            if term >= term_count || doc >= doc_count {
                return Err(bad(&postings_path, line, "index out of range"));
            }
            let entries = &mut postings[term].entries;
            if entries.last().is_some_and(|&(d, _)| d >= doc) {
                return Err(bad(&postings_path, line, "postings not sorted"));
            }
            entries.push((doc, tf));
            doc_entries[doc].push((term, tf));
        }
        let docs = doc_entries.into_iter().map(|e| SparseDocVector::new(term_count, e)).collect::<Result<Vec<_>>>()?;

        let norms_path = dir.join("norms.tsv");
        let mut doc_norms = vec![f64::NAN; doc_count];
        for (line, f) in tsv_rows(&norms_path)? {
            let doc: usize = field(&norms_path, line, &f, 0)?;
            let norm: f64 = field(&norms_path, line, &f, 1)?;
            if doc >= doc_count || norm.is_nan() || norm <= 0.0 {
                return Err(bad(&norms_path, line, "bad document or norm"));
            }
            doc_norms[doc] = norm;
        }
        if doc_norms.iter().any(|n| n.is_nan()) {
            return Err(bad(&norms_path, 0, "missing document norms"));
        }

        let docs_path = dir.join("docs.tsv");
        let mut doc_ids = vec![String::new(); doc_count];
        for (line, f) in tsv_rows(&docs_path)? {
            let doc: usize = field(&docs_path, line, &f, 0)?;
            if doc >= doc_count || f.len() != 2 {
                return Err(bad(&docs_path, line, "bad document entry"));
            }
            doc_ids[doc] = f[1].clone();
        }

        let weights_path = dir.join("weights.tsv");
        let mut w = vec![f64::NAN; term_count];
        for (line, f) in tsv_rows(&weights_path)? {
            let i: usize = field(&weights_path, line, &f, 0)?;
            if i >= term_count {
                return Err(bad(&weights_path, line, "term index out of range"));
            }
            w[i] = field(&weights_path, line, &f, 1)?;
        }
        let weights = TermWeights::new(w)?;

        Ok(Self { postings, docs, doc_ids, doc_norms, weights, matrix_checksum, vocab })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SimilarityMatrix;
    use crate::vector::CorpusMatrix;

    #[test]
    fn save_load_preserves_everything() {
        let s =
            SimilarityMatrix::from_triplets(4, (0..4).map(|i| (i, i, 1.0)).chain([(0, 3, 0.3), (3, 0, 0.3)])).unwrap();
        let cols =
            vec![SparseDocVector::new(4, [(0, 1.0), (2, 3.0)]).unwrap(), SparseDocVector::new(4, [(3, 2.0)]).unwrap()];
        let corpus = CorpusMatrix::new(4, vec!["alpha".into(), "beta".into()], cols).unwrap();
        let w = TermWeights::new(vec![1.0, 2.0, 0.1, 1.0 / 3.0]).unwrap();
        let vocab = Vocabulary::from_terms((0..4).map(|i| (format!("t{i}"), 1)), 2).unwrap();
        let idx = InvertedIndex::build(&corpus, &w, &s, Some(&vocab)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        idx.save(dir.path()).unwrap();
        let back = InvertedIndex::load(dir.path()).unwrap();
        assert_eq!(back.postings, idx.postings);
        assert_eq!(back.docs, idx.docs);
        assert_eq!(back.doc_ids, idx.doc_ids);
        assert_eq!(back.doc_norms, idx.doc_norms);
        assert_eq!(back.weights, idx.weights);
        assert_eq!(back.vocab, idx.vocab);
        assert_eq!(back.matrix_checksum, s.checksum());
    }

    #[test]
    fn rejects_unknown_version() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("meta.txt"), "format_version = 99\n").unwrap();
        assert!(InvertedIndex::load(dir.path()).is_err());
    }
}
