use std::fs;
use std::path::Path;

use softvsm::bench::{self, BenchConfig};
use softvsm::factor::{cholesky, transform_to_orthonormal, Permutation};
use softvsm::invindex::InvertedIndex;
use softvsm::mm::{load_matrix, save_matrix};
use softvsm::scm::batch_scm;
use softvsm::simatrix::{sparsify, ColumnOrder, Dominance, Embeddings, SimilaritySource, SparsifyConfig, Strategy};
use softvsm::text::tokenize;
use softvsm::transform::{doc_for_cosine, doc_for_dot, doc_for_scm};
use softvsm::{idf_weights, vectorize, CorpusMatrix, Error, Result, TermWeights, Vocabulary};

use crate::args::*;
use crate::table::{Cell, Table};

/// Documents of a corpus file, one per line. Lines without tokens are
/// skipped; ids are `d` plus the 1-based line number.
fn read_corpus(path: &Path) -> Result<Vec<(String, Vec<String>)>> {
    let text = fs::read_to_string(path)?;
    let docs: Vec<_> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (format!("d{}", i + 1), tokenize(l)))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(docs)
}

fn corpus_matrix(docs: &[(String, Vec<String>)], vocab: &Vocabulary) -> Result<CorpusMatrix> {
    let ids = docs.iter().map(|(id, _)| id.clone()).collect();
    let cols = docs.iter().map(|(_, t)| vectorize(t, vocab)).collect();
    CorpusMatrix::new(vocab.len(), ids, cols)
}

fn read_weights(path: &Path, n: usize) -> Result<TermWeights> {
    let text = fs::read_to_string(path)?;
    let w = text
        .lines()
        .enumerate()
        .map(|(i, l)| l.trim().parse::<f64>().map_err(|_| Error::parse(path, i + 1, "expected a real weight")))
        .collect::<Result<Vec<_>>>()?;
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.len() });
    }
    TermWeights::new(w)
}

fn weights(args: &WeightArgs, vocab: &Vocabulary, num_docs: usize) -> Result<TermWeights> {
    match (&args.weights, args.weighting) {
        (Some(path), _) => read_weights(path, vocab.len()),
        (None, Weighting::Idf) => idf_weights(vocab, num_docs as u64),
        (None, Weighting::Uniform) => Ok(TermWeights::uniform(vocab.len())),
    }
}

fn load_checked(path: &Path, n: usize) -> Result<softvsm::SimilarityMatrix> {
    let s = load_matrix(path)?;
    if s.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s.n() });
    }
    Ok(s)
}

pub fn run(cli: &Cli) -> Result<()> {
    let format = cli.format;
    match &cli.command {
        Command::Vocab { corpus, out } => {
            let docs = read_corpus(corpus)?;
            Vocabulary::build(docs.iter().map(|(_, t)| t))?.save(out)
        }
        Command::BuildMatrix(a) => {
            let vocab = Vocabulary::load(&a.vocab)?;
            let source = match a.source {
                Source::Embedding => {
                    SimilaritySource::Embedding(Embeddings::load_word2vec(a.embeddings.as_deref().unwrap())?)
                }
                Source::Edit => SimilaritySource::EditDistance { alpha: a.alpha, beta: a.beta },
                Source::File => SimilaritySource::UserSupplied(load_matrix(a.matrix.as_deref().unwrap())?),
            };
            save_matrix(&a.out, &source.build(&vocab, a.threshold)?)
        }
        Command::Sparsify(a) => {
            let s = load_matrix(&a.matrix)?;
            let vocab = a.vocab.as_deref().map(Vocabulary::load).transpose()?;
            let cfg = SparsifyConfig::new(a.max_per_column)
                .strategy(match a.strategy {
                    StrategyArg::Greedy => Strategy::GreedySymmetric,
                    StrategyArg::Topc => Strategy::TopCAsymmetric,
                })
                .column_order(match a.order {
                    OrderArg::Frequency => ColumnOrder::ByIncreasingDocFreq,
                    OrderArg::AsIs => ColumnOrder::AsIs,
                })
                .dominance(if a.dominance { Dominance::StrictDiagonal } else { Dominance::None })
                .threshold(a.threshold);
            save_matrix(&a.out, &sparsify(&s, vocab.as_ref(), &cfg)?)
        }
        Command::Factorize(a) => {
            let s = load_matrix(&a.matrix)?;
            let perm = match a.permutation {
                PermutationArg::None => Permutation::None,
                PermutationArg::Rcm => Permutation::Rcm,
            };
            cholesky(&s, perm)?.save(&a.out, &a.perm_out)
        }
        Command::Index(a) => {
            let docs = read_corpus(&a.corpus)?;
            let vocab = Vocabulary::load(&a.vocab)?;
            let s = load_checked(&a.matrix, vocab.len())?;
            let w = weights(&a.weights, &vocab, docs.len())?;
            let corpus = corpus_matrix(&docs, &vocab)?;
            InvertedIndex::build(&corpus, &w, &s, Some(&vocab))?.save(&a.out)
        }
        Command::Query(a) => query(a, format),
        Command::Sim(a) => {
            let docs = read_corpus(&a.corpus)?;
            let vocab = Vocabulary::load(&a.vocab)?;
            let s = load_checked(&a.matrix, vocab.len())?;
            let w = weights(&a.weights, &vocab, docs.len())?;
            let corpus = corpus_matrix(&docs, &vocab)?;
            let rows = match &a.queries {
                Some(path) => corpus_matrix(&read_corpus(path)?, &vocab)?,
                None => corpus.clone(),
            };
            let scores = batch_scm(&rows, &corpus, &w, &s)?;
            let mut table = Table::new(std::iter::once("doc_id").chain(corpus.doc_ids().iter().map(String::as_str)));
            for (i, id) in rows.doc_ids().iter().enumerate() {
                let mut row = vec![Cell::text(id)];
                row.extend(scores.row(i).iter().map(|&v| Cell::fixed(v, 6)));
                table.push(row);
            }
            Ok(table.print(format)?)
        }
        Command::ExportVectors(a) => {
            let docs = read_corpus(&a.corpus)?;
            let vocab = Vocabulary::load(&a.vocab)?;
            let s = load_checked(&a.matrix, vocab.len())?;
            let w = weights(&a.weights, &vocab, docs.len())?;
            let corpus = corpus_matrix(&docs, &vocab)?;
            let chol = match a.kind {
                VectorKind::Orthonormal => Some(cholesky(&s, Permutation::Rcm)?),
                _ => None,
            };
            let mut table = Table::new(["doc_id", "vector"]);
            for (id, y) in corpus.iter() {
                let v = match a.kind {
                    VectorKind::Dot => doc_for_dot(y, &w)?.coords.to_dense(),
                    VectorKind::Scm => doc_for_scm(y, &w, &s)?.coords.to_dense(),
                    VectorKind::Cosine => doc_for_cosine(y, &w, &s)?.coords.to_dense(),
                    VectorKind::Orthonormal => transform_to_orthonormal(y, &w, chol.as_ref().unwrap())?,
                };
                table.push(vec![Cell::text(id), Cell::list(&v)]);
            }
            Ok(table.print(format)?)
        }
        Command::Bench(a) => {
            let cfg = BenchConfig {
                sizes: a.sizes.clone(),
                iterations: a.iters,
                algorithms: a.algorithms.clone(),
                seed: a.seed,
            };
            let report = bench::run(&cfg)?;
            let mut table = Table::new(["n", "algorithm", "iterations", "mean_seconds", "std_seconds", "speedup"]);
            for r in &report.rows {
                let speedup = match (r.algorithm, report.speedup(r.n)) {
                    (bench::Algorithm::Gaussian, Some(x)) => Cell::fixed(x, 1),
                    _ => Cell::text(""),
                };
                table.push(vec![
                    Cell::int(r.n),
                    Cell::text(r.algorithm.name()),
                    Cell::int(r.iterations),
                    Cell::real(r.mean_seconds),
                    Cell::real(r.std_seconds),
                    speedup,
                ]);
            }
            Ok(table.print(format)?)
        }
    }
}

fn query(a: &QueryArgs, format: Format) -> Result<()> {
    let index = InvertedIndex::load(&a.index)?;
    let s = load_matrix(&a.matrix)?;
    let vocab = index
        .vocabulary()
        .ok_or_else(|| Error::InvalidConfig("index has no vocabulary; rebuild it with `softvsm index`".into()))?;
    let texts: Vec<String> = match (&a.query, &a.queries) {
        (Some(q), _) => vec![q.clone()],
        (None, Some(path)) => fs::read_to_string(path)?.lines().map(str::to_owned).collect(),
        (None, None) => unreachable!("clap requires one of --query/--queries"),
    };
    let many = a.queries.is_some();
    let mut header = vec!["rank", "doc_id", "score"];
    if many {
        header.insert(0, "query");
    }
    let mut table = Table::new(header);
    for (qi, text) in texts.iter().enumerate() {
        let x = vectorize(&tokenize(text), vocab);
        for (r, hit) in index.search(&x, &s, a.k)?.iter().enumerate() {
            let mut row = vec![Cell::int(r + 1), Cell::text(index.doc_id(hit.doc)), Cell::fixed(hit.score, 6)];
            if many {
                row.insert(0, Cell::int(qi + 1));
            }
            table.push(row);
        }
    }
    Ok(table.print(format)?)
}
