use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::SimilarityMatrix;
use crate::vocab::Vocabulary;

/// Margin below one for the off-diagonal column sum under strict dominance.
pub const DOMINANCE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Keep the `C − 1` largest off-diagonal entries of every column.
    TopCAsymmetric,
    /// Insert `s_ij` together with `s_ji` while neither column is full.
    #[default]
    GreedySymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColumnOrder {
    AsIs,
    #[default]
    ByIncreasingDocFreq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dominance {
    #[default]
    None,
    StrictDiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsifyConfig {
    /// Maximum non-zeros per column, diagonal included.
    pub max_per_column: usize,
    pub strategy: Strategy,
    pub column_order: ColumnOrder,
    pub dominance: Dominance,
    /// Off-diagonal entries with `|s_ij|` below this are dropped.
    pub threshold: f64,
}

impl SparsifyConfig {
    pub fn new(max_per_column: usize) -> Self {
        Self {
            max_per_column,
            strategy: Strategy::default(),
            column_order: ColumnOrder::default(),
            dominance: Dominance::default(),
            threshold: 0.0,
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn column_order(mut self, order: ColumnOrder) -> Self {
        self.column_order = order;
        self
    }

    pub fn dominance(mut self, dominance: Dominance) -> Self {
        self.dominance = dominance;
        self
    }

    pub fn threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }
}

/// Off-diagonal candidates of column `j`, largest magnitude first, ties by
/// lower row index.
fn ranked_candidates(s: &SimilarityMatrix, j: usize, threshold: f64) -> Vec<(usize, f64)> {
    let (rows, vals) = s.column(j);
    let mut cands: Vec<(usize, f64)> =
        rows.iter().zip(vals).filter(|&(&i, &v)| i != j && v.abs() >= threshold).map(|(&i, &v)| (i, v)).collect();
    cands.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0)));
    cands
}

fn column_sequence(n: usize, order: ColumnOrder, vocab: Option<&Vocabulary>) -> Result<Vec<usize>> {
    let mut cols: Vec<usize> = (0..n).collect();
    if order == ColumnOrder::ByIncreasingDocFreq {
        let vocab =
            vocab.ok_or_else(|| Error::InvalidConfig("ordering by document frequency needs a vocabulary".into()))?;
        if vocab.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: vocab.len() });
        }
        let df = vocab.doc_freq();
        cols.sort_by_key(|&j| (df[j], j));
    }
    Ok(cols)
}

/// Reduces `s` to at most `cfg.max_per_column` non-zeros per column,
/// keeping the unit diagonal.
///
/// The greedy symmetric strategy uses `s_ij` for both mirrored positions, so
/// its output is exactly symmetric even for slightly asymmetric input. With
/// [`Dominance::StrictDiagonal`] each off-diagonal entry is scaled by
/// `min(f_i, f_j)` for symmetric output (by `f_j` otherwise), where `f_j`
/// brings column `j`'s absolute off-diagonal sum to at most
/// `1 − DOMINANCE_MARGIN`.
pub fn sparsify(s: &SimilarityMatrix, vocab: Option<&Vocabulary>, cfg: &SparsifyConfig) -> Result<SimilarityMatrix> {
    let c = cfg.max_per_column;
    if c == 0 {
        return Err(Error::InvalidConfig("max non-zeros per column must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&cfg.threshold) {
        return Err(Error::InvalidConfig(format!("threshold must lie in [0, 1], got {}", cfg.threshold)));
    }
    if !s.has_unit_diagonal() {
        return Err(Error::InvalidMatrix("sparsification needs a unit diagonal".into()));
    }
    let n = s.n();
    let order = column_sequence(n, cfg.column_order, vocab)?;

    // Off-diagonal kept entries per column as (row, value).
    let mut kept: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    match cfg.strategy {
        Strategy::TopCAsymmetric => {
            for &j in &order {
                kept[j] = ranked_candidates(s, j, cfg.threshold).into_iter().take(c - 1).collect();
            }
        }
        Strategy::GreedySymmetric => {
            let mut count = vec![1usize; n];
            let mut done = vec![false; n];
            for &j in &order {
                for (i, v) in ranked_candidates(s, j, cfg.threshold) {
                    if count[j] >= c {
                        break;
                    }
                    // Pair already decided while processing column i.
                    if done[i] {
                        continue;
                    }
                    if count[i] < c {
                        kept[j].push((i, v));
                        kept[i].push((j, v));
                        count[i] += 1;
                        count[j] += 1;
                    }
                }
                done[j] = true;
            }
        }
    }

    let symmetric_out = cfg.strategy == Strategy::GreedySymmetric || {
        let probe = SimilarityMatrix::from_triplets(n, triplets(&kept))?;
        probe.is_symmetric()
    };

    if cfg.dominance == Dominance::StrictDiagonal {
        let limit = 1.0 - DOMINANCE_MARGIN;
        let factor: Vec<f64> = kept
            .iter()
            .map(|col| {
                let sum: f64 = col.iter().map(|(_, v)| v.abs()).sum();
                if sum > limit {
                    limit / sum
                } else {
                    1.0
                }
            })
            .collect();
        for (j, col) in kept.iter_mut().enumerate() {
            for (i, v) in col.iter_mut() {
                let f = if symmetric_out { factor[*i].min(factor[j]) } else { factor[j] };
                *v *= f;
            }
        }
    }

    SimilarityMatrix::from_triplets(n, triplets(&kept))
}

fn triplets(kept: &[Vec<(usize, f64)>]) -> Vec<(usize, usize, f64)> {
    let mut out: Vec<_> = (0..kept.len()).map(|j| (j, j, 1.0)).collect();
    for (j, col) in kept.iter().enumerate() {
        out.extend(col.iter().map(|&(i, v)| (i, j, v)));
    }
    out
}

/// True iff every column's absolute off-diagonal sum is below its diagonal.
pub fn is_strictly_diagonally_dominant(s: &SimilarityMatrix) -> bool {
    (0..s.n()).all(|j| {
        let (rows, vals) = s.column(j);
        let (diag, off) =
            rows.iter().zip(vals).fold((0.0, 0.0), |(d, o), (&i, &v)| if i == j { (v, o) } else { (d, o + v.abs()) });
        off < diag
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(n: usize, density: f64, rng: &mut impl Rng) -> SimilarityMatrix {
        let mut t: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, i, 1.0)).collect();
        for j in 0..n {
            for i in j + 1..n {
                if rng.gen_bool(density) {
                    let v = rng.gen_range(0.01..1.0);
                    t.push((i, j, v));
                    t.push((j, i, v));
                }
            }
        }
        SimilarityMatrix::from_triplets(n, t).unwrap()
    }

    /// Step-by-step greedy simulation over a dense copy, written without
    /// the sparse helpers above.
    fn greedy_oracle(dense: &[Vec<f64>], c: usize, order: &[usize]) -> Vec<Vec<f64>> {
        let n = dense.len();
        let mut out = vec![vec![0.0; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let nnz = |out: &Vec<Vec<f64>>, col: usize| (0..n).filter(|&r| out[r][col] != 0.0).count();
        let mut visited = vec![false; n];
        for &j in order {
            let mut cand: Vec<usize> = (0..n).filter(|&i| i != j && dense[i][j] != 0.0).collect();
            cand.sort_by(|&a, &b| dense[b][j].abs().partial_cmp(&dense[a][j].abs()).unwrap().then(a.cmp(&b)));
            for i in cand {
                if visited[i] {
                    continue;
                }
                if nnz(&out, j) < c && nnz(&out, i) < c {
                    out[i][j] = dense[i][j];
                    out[j][i] = dense[i][j];
                }
            }
            visited[j] = true;
        }
        out
    }

    #[test]
    fn c_equal_one_gives_identity_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_symmetric(20, 0.3, &mut rng);
        for strategy in [Strategy::TopCAsymmetric, Strategy::GreedySymmetric] {
            let cfg = SparsifyConfig::new(1).strategy(strategy).column_order(ColumnOrder::AsIs);
            assert_eq!(sparsify(&s, None, &cfg).unwrap(), SimilarityMatrix::identity(20));
        }
    }

    #[test]
    fn large_c_is_a_no_op() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_symmetric(30, 0.2, &mut rng);
        let c = s.max_column_nnz();
        for strategy in [Strategy::TopCAsymmetric, Strategy::GreedySymmetric] {
            let cfg = SparsifyConfig::new(c).strategy(strategy).column_order(ColumnOrder::AsIs);
            assert_eq!(sparsify(&s, None, &cfg).unwrap(), s);
        }
    }

    #[test]
    fn greedy_matches_step_by_step_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..10 {
            let s = random_symmetric(50, 0.3, &mut rng);
            let dfs: Vec<u64> = (0..50).map(|_| rng.gen_range(1..20)).collect();
            let vocab = Vocabulary::from_terms(dfs.iter().enumerate().map(|(i, &d)| (format!("t{i}"), d)), 20).unwrap();
            let cfg = SparsifyConfig::new(5);
            let out = sparsify(&s, Some(&vocab), &cfg).unwrap();
            assert!(out.is_symmetric());
            assert!(out.max_column_nnz() <= 5);
            assert!(out.has_unit_diagonal());

            let mut order: Vec<usize> = (0..50).collect();
            order.sort_by_key(|&j| (dfs[j], j));
            let dense: Vec<Vec<f64>> = (0..50).map(|i| (0..50).map(|j| s.get(i, j)).collect()).collect();
            let expected = greedy_oracle(&dense, 5, &order);
            for (i, row) in expected.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(out.get(i, j), v, "trial {trial} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn top_c_keeps_largest_with_low_index_ties() {
        let s = SimilarityMatrix::from_triplets(
            4,
            [(0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0), (3, 3, 1.0), (1, 0, 0.5), (2, 0, 0.5), (3, 0, 0.9)],
        )
        .unwrap();
        let cfg = SparsifyConfig::new(3).strategy(Strategy::TopCAsymmetric).column_order(ColumnOrder::AsIs);
        let out = sparsify(&s, None, &cfg).unwrap();
        assert_eq!(out.column(0).0, [0, 1, 3]);
        assert!(!out.is_symmetric());
    }

    #[test]
    fn dominance_rescale_is_diagonally_dominant_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = random_symmetric(40, 0.5, &mut rng);
        let cfg = SparsifyConfig::new(8).column_order(ColumnOrder::AsIs).dominance(Dominance::StrictDiagonal);
        let out = sparsify(&s, None, &cfg).unwrap();
        assert!(out.is_symmetric());
        assert!(is_strictly_diagonally_dominant(&out));
        for j in 0..40 {
            let (rows, vals) = out.column(j);
            let off: f64 = rows.iter().zip(vals).filter(|(&i, _)| i != j).map(|(_, v)| v.abs()).sum();
            assert!(off <= 1.0 - DOMINANCE_MARGIN + 1e-15);
        }
    }

    #[test]
    fn diagonal_dominance_predicate() {
        assert!(is_strictly_diagonally_dominant(&SimilarityMatrix::identity(4)));
        let s = SimilarityMatrix::from_triplets(2, [(0, 0, 1.0), (1, 1, 1.0), (0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        assert!(!is_strictly_diagonally_dominant(&s));
    }

    #[test]
    fn threshold_drops_small_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_symmetric(30, 0.4, &mut rng);
        let mut prev = usize::MAX;
        for t in [0.0, 0.3, 0.6, 0.9] {
            let cfg = SparsifyConfig::new(30).column_order(ColumnOrder::AsIs).threshold(t);
            let nnz = sparsify(&s, None, &cfg).unwrap().nnz();
            assert!(nnz <= prev);
            prev = nnz;
        }
    }

    #[test]
    fn errors() {
        let s = SimilarityMatrix::identity(3);
        assert!(sparsify(&s, None, &SparsifyConfig::new(0)).is_err());
        // frequency ordering without a vocabulary
        assert!(sparsify(&s, None, &SparsifyConfig::new(2)).is_err());
        let bad = SimilarityMatrix::from_triplets(2, [(0, 0, 0.5), (1, 1, 1.0)]).unwrap();
        assert!(sparsify(&bad, None, &SparsifyConfig::new(2).column_order(ColumnOrder::AsIs)).is_err());
    }
}
