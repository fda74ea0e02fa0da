//! Wall-clock comparison of Cholesky orthonormalization against the
//! iterated Gaussian elimination baseline on dense matrices.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::factor::{cholesky_dense, orthonormalize_gaussian};
use crate::simatrix::DOMINANCE_MARGIN;

/// Largest order accepted for the `Θ(n⁴)` baseline.
pub const MAX_GAUSSIAN_N: usize = 1500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Cholesky,
    Gaussian,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cholesky => "cholesky",
            Algorithm::Gaussian => "gaussian",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cholesky" => Ok(Algorithm::Cholesky),
            "gaussian" => Ok(Algorithm::Gaussian),
            other => Err(Error::InvalidConfig(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub algorithm: Algorithm,
    pub iterations: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn mean(&self, n: usize, algorithm: Algorithm) -> Option<f64> {
        self.rows.iter().find(|r| r.n == n && r.algorithm == algorithm).map(|r| r.mean_seconds)
    }

    /// Gaussian mean time over Cholesky mean time at order `n`.
    pub fn speedup(&self, n: usize) -> Option<f64> {
        Some(self.mean(n, Algorithm::Gaussian)? / self.mean(n, Algorithm::Cholesky)?)
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = self.rows.iter().map(|r| r.n).collect();
        ns.dedup();
        ns
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\talgorithm\titerations\tmean_seconds\tstd_seconds\n");
        for r in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{}\t{:.6e}\t{:.6e}",
                r.n,
                r.algorithm.name(),
                r.iterations,
                r.mean_seconds,
                r.std_seconds
            )
            .unwrap();
        }
        for n in self.sizes() {
            if let Some(x) = self.speedup(n) {
                writeln!(out, "# speedup n={n} cholesky:gaussian = {x:.1}").unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub iterations: usize,
    pub algorithms: Vec<Algorithm>,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![100, 500, 1000],
            iterations: 10,
            algorithms: vec![Algorithm::Cholesky, Algorithm::Gaussian],
            seed: 0,
        }
    }
}

/// Symmetric matrix with unit diagonal and off-diagonals drawn from `[0, 1]`,
/// scaled down uniformly until every row's off-diagonal sum is below one.
pub fn random_dominant_dense(n: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = DenseMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            let v = rng.gen_range(0.0..=1.0);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    let max_sum = (0..n).map(|i| s.row(i).iter().sum::<f64>() - 1.0).fold(0.0, f64::max);
    if max_sum >= 1.0 - DOMINANCE_MARGIN {
        let f = (1.0 - DOMINANCE_MARGIN) / max_sum;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s[(i, j)] *= f;
                }
            }
        }
    }
    s
}

/// Times `iterations` runs of `algorithm` on `s`.
pub fn measure(algorithm: Algorithm, s: &DenseMatrix, iterations: usize) -> Result<BenchRow> {
    if iterations == 0 {
        return Err(Error::InvalidConfig("iterations must be at least 1".into()));
    }
    let n = s.nrows();
    if algorithm == Algorithm::Gaussian && n > MAX_GAUSSIAN_N {
        return Err(Error::InvalidConfig(format!("gaussian baseline limited to n <= {MAX_GAUSSIAN_N}, got {n}")));
    }
    let mut times = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let start = Instant::now();
        let e = match algorithm {
            Algorithm::Cholesky => cholesky_dense(s)?,
            Algorithm::Gaussian => orthonormalize_gaussian(s)?,
        };
        times.push(start.elapsed().as_secs_f64());
        std::hint::black_box(e);
    }
    let mean = times.iter().sum::<f64>() / iterations as f64;
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / iterations as f64;
    Ok(BenchRow { n, algorithm, iterations, mean_seconds: mean, std_seconds: var.sqrt() })
}

pub fn run(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.algorithms.contains(&Algorithm::Gaussian) {
        if let Some(&n) = cfg.sizes.iter().find(|&&n| n > MAX_GAUSSIAN_N) {
            return Err(Error::InvalidConfig(format!("gaussian baseline limited to n <= {MAX_GAUSSIAN_N}, got {n}")));
        }
    }
    let mut report = BenchReport::default();
    for &n in &cfg.sizes {
        let s = random_dominant_dense(n, cfg.seed ^ n as u64);
        for &alg in &cfg.algorithms {
            report.rows.push(measure(alg, &s, cfg.iterations)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SimilarityMatrix;
    use crate::simatrix::is_strictly_diagonally_dominant;

    #[test]
    fn generated_matrices_are_dominant_and_reproducible() {
        let a = random_dominant_dense(30, 9);
        assert_eq!(a, random_dominant_dense(30, 9));
        assert!(a.is_symmetric());
        assert!(is_strictly_diagonally_dominant(&SimilarityMatrix::from_dense(&a).unwrap()));
    }

    #[test]
    fn small_run_has_all_rows() {
        let cfg = BenchConfig { sizes: vec![8, 16], iterations: 2, ..Default::default() };
        let r = run(&cfg).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|row| row.mean_seconds >= 0.0 && row.iterations == 2));
        assert!(r.speedup(16).is_some());
        assert!(r.to_tsv().starts_with("n\talgorithm"));
    }

    #[test]
    fn guards() {
        let cfg = BenchConfig { sizes: vec![2000], ..Default::default() };
        assert!(run(&cfg).is_err());
        assert!(measure(Algorithm::Cholesky, &DenseMatrix::identity(2), 0).is_err());
    }
}
