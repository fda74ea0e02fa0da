//! Sparse soft vector space model.
//!
//! Documents are bag-of-words vectors whose term basis is not orthogonal:
//! the similarity matrix `S` holds inner products between term basis
//! vectors and the diagonal `W` holds term weights. This crate builds and
//! sparsifies `S`, factorizes it, scores document pairs with the soft
//! inner product and the Soft Cosine Measure, and retrieves documents
//! either through order-preserving coordinate transforms or an inverted
//! index with query expansion.

pub mod bench;
mod dense;
mod error;
pub mod factor;
pub mod invindex;
mod matrix;
pub mod mm;
pub mod scm;
pub mod simatrix;
pub mod text;
pub mod transform;
mod vector;
mod vocab;
mod weights;

pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use matrix::SimilarityMatrix;
pub use vector::{detokenize, vectorize, CorpusMatrix, SparseDocVector};
pub use vocab::Vocabulary;
pub use weights::{idf_weights, TermWeights};
