//! Dense factorizations: row-oriented Cholesky and the iterated Gaussian
//! elimination baseline.

use crate::dense::{dot, DenseMatrix};
use crate::error::{Error, Result};

fn check_square(s: &DenseMatrix) -> Result<usize> {
    if s.nrows() != s.ncols() {
        return Err(Error::InvalidMatrix(format!("matrix is {}x{}, expected square", s.nrows(), s.ncols())));
    }
    Ok(s.nrows())
}

/// Lower-triangular `L` with positive diagonal and `L Lᵀ = s`. Reads only
/// the lower triangle of `s`. Cost `n³/3` multiply-adds.
pub fn cholesky_dense(s: &DenseMatrix) -> Result<DenseMatrix> {
    let n = check_square(s)?;
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let acc = dot(&l.row(i)[..j], &l.row(j)[..j]);
            let v = s[(i, j)] - acc;
            if i == j {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::NotPositiveDefinite { column: i });
                }
                l[(i, i)] = v.sqrt();
            } else {
                l[(i, j)] = v / l[(j, j)];
            }
        }
    }
    Ok(l)
}

/// One complete Gaussian elimination (no pivoting) of `u` in place, leaving
/// the upper-triangular factor `U` of `s = L U` in the upper triangle.
fn eliminate(u: &mut DenseMatrix) -> Result<()> {
    let n = u.nrows();
    for t in 0..n {
        let pivot = u[(t, t)];
        if !(pivot.is_finite() && pivot > 0.0) {
            return Err(Error::NotPositiveDefinite { column: t });
        }
        for r in t + 1..n {
            let f = u[(r, t)] / pivot;
            if f == 0.0 {
                continue;
            }
            let (top, bottom) = u.as_rows_mut(t, r);
            for (x, y) in bottom[t..].iter_mut().zip(&top[t..]) {
                *x -= f * y;
            }
        }
    }
    Ok(())
}

/// Orthonormalization baseline in `Θ(n⁴)`: column `k` of the factor is
/// read off row `k` of `U` from a full, fresh elimination of `s`, once per
/// column. Produces the same positive-diagonal factor as [`cholesky_dense`]
/// (`E Eᵀ = s`), only slower by a factor of `n`.
pub fn orthonormalize_gaussian(s: &DenseMatrix) -> Result<DenseMatrix> {
    let n = check_square(s)?;
    let mut e = DenseMatrix::zeros(n, n);
    let mut work = s.clone();
    for k in 0..n {
        work.as_mut_slice().copy_from_slice(s.as_slice());
        eliminate(&mut work)?;
        let scale = work[(k, k)].sqrt();
        for i in k..n {
            e[(i, k)] = work[(k, i)] / scale;
        }
    }
    Ok(e)
}

impl DenseMatrix {
    /// Disjoint borrows of rows `a < b`.
    fn as_rows_mut(&mut self, a: usize, b: usize) -> (&[f64], &mut [f64]) {
        debug_assert!(a < b);
        let cols = self.ncols();
        let (head, tail) = self.as_mut_slice().split_at_mut(b * cols);
        (&head[a * cols..(a + 1) * cols], &mut tail[..cols])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_closed_form() {
        let s = DenseMatrix::from_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]);
        let l = cholesky_dense(&s).unwrap();
        assert_eq!(l[(0, 0)], 1.0);
        assert_eq!(l[(1, 0)], 0.5);
        assert_eq!(l[(0, 1)], 0.0);
        assert!((l[(1, 1)] - 0.75f64.sqrt()).abs() < 1e-15);
        let e = orthonormalize_gaussian(&s).unwrap();
        assert!(e.max_abs_diff(&l) < 1e-15);
    }

    #[test]
    fn identity_stays_identity() {
        let i = DenseMatrix::identity(5);
        assert_eq!(cholesky_dense(&i).unwrap(), i);
        assert_eq!(orthonormalize_gaussian(&i).unwrap(), i);
    }

    #[test]
    fn indefinite_input_breaks_down() {
        let s = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(matches!(cholesky_dense(&s), Err(Error::NotPositiveDefinite { column: 1 })));
        assert!(orthonormalize_gaussian(&s).is_err());
    }
}
