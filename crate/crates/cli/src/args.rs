use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use softvsm::bench::Algorithm;

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: softvsm::Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "softvsm", version, about = "Sparse soft vector space model toolkit")]
pub struct Cli {
    /// Output format for tables written to standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,

    /// File of `key = value` lines supplying flags not given on the command line.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    JsonLines,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a vocabulary (term and document frequency) from a corpus.
    Vocab {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a term similarity matrix in Matrix Market format.
    BuildMatrix(BuildMatrixArgs),
    /// Keep at most C entries per column of a similarity matrix.
    Sparsify(SparsifyArgs),
    /// Cholesky-factorize a similarity matrix.
    Factorize(FactorizeArgs),
    /// Build an inverted index over a corpus.
    Index(IndexArgs),
    /// Rank indexed documents against a query.
    Query(QueryArgs),
    /// Soft cosine scores between documents.
    Sim(SimArgs),
    /// Write transformed document vectors for external nearest-neighbour search.
    ExportVectors(ExportArgs),
    /// Time Cholesky against the iterated Gaussian elimination baseline.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Source {
    Embedding,
    Edit,
    File,
}

#[derive(Debug, Args)]
pub struct BuildMatrixArgs {
    #[arg(long, value_enum)]
    pub source: Source,
    #[arg(long)]
    pub vocab: PathBuf,
    /// word2vec text file (for `--source embedding`).
    #[arg(long, required_if_eq("source", "embedding"))]
    pub embeddings: Option<PathBuf>,
    /// Existing Matrix Market file (for `--source file`).
    #[arg(long, required_if_eq("source", "file"))]
    pub matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
    #[arg(long, default_value_t = softvsm::simatrix::DEFAULT_EDIT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = softvsm::simatrix::DEFAULT_EDIT_BETA)]
    pub beta: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Greedy,
    Topc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Frequency,
    AsIs,
}

#[derive(Debug, Args)]
pub struct SparsifyArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Needed for frequency ordering.
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    /// Maximum non-zeros per column, diagonal included.
    #[arg(long = "max-per-column", short = 'C')]
    pub max_per_column: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Frequency)]
    pub order: OrderArg,
    /// Rescale columns so the result is strictly diagonally dominant.
    #[arg(long)]
    pub dominance: bool,
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PermutationArg {
    None,
    Rcm,
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value_t = PermutationArg::Rcm)]
    pub permutation: PermutationArg,
    /// Lower-triangular factor F (Matrix Market).
    #[arg(long)]
    pub out: PathBuf,
    /// Permutation, one 0-based original index per line.
    #[arg(long = "perm-out")]
    pub perm_out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Weighting {
    Idf,
    Uniform,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[arg(long, value_enum, default_value_t = Weighting::Idf)]
    pub weighting: Weighting,
    /// Explicit weights, one per line in vocabulary order. Overrides `--weighting`.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub vocab: PathBuf,
    #[arg(long)]
    pub matrix: PathBuf,
    #[command(flatten)]
    pub weights: WeightArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub index: PathBuf,
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, required_unless_present = "queries", conflicts_with = "queries")]
    pub query: Option<String>,
    /// One query per line; output gains a leading query-number column.
    #[arg(long)]
    pub queries: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Rows of the score matrix; defaults to the corpus itself.
    #[arg(long)]
    pub queries: Option<PathBuf>,
    #[arg(long)]
    pub vocab: PathBuf,
    #[arg(long)]
    pub matrix: PathBuf,
    #[command(flatten)]
    pub weights: WeightArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VectorKind {
    /// `W y`, paired with dot-product queries `SᵀW x`.
    Dot,
    /// `W y` over its soft norm.
    Scm,
    /// Soft-normalized `W y` plus one coordinate making it unit length.
    Cosine,
    /// `EᵀW y` from the Cholesky factor of S.
    Orthonormal,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub vocab: PathBuf,
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value_t = VectorKind::Scm)]
    pub kind: VectorKind,
    #[command(flatten)]
    pub weights: WeightArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [100, 500, 1000])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    #[arg(long, value_delimiter = ',', default_values = ["cholesky", "gaussian"], value_parser = parse_algorithm)]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
