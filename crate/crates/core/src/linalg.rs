//! Exact linear algebra over the rationals for the few places that need it:
//! ranks, determinants and adjugates of small integer matrices.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::IntMatrix;
use crate::error::{Error, Result};

fn to_rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// Rank over the rationals of a (possibly rectangular) integer matrix.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m = to_rational_rows(rows);
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..ncols {
                let d = &f * &m[rank][c];
                m[r][c] -= d;
            }
        }
        rank += 1;
    }
    rank
}

fn to_i64(x: &BigRational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Precondition(format!("{x} is not an integer")));
    }
    x.to_integer().to_i64().ok_or(Error::Overflow)
}

/// Determinant and adjugate of a nonsingular integer matrix, so that
/// `m * adj = det * I`.
pub fn det_and_adjugate(m: &IntMatrix) -> Result<(i64, IntMatrix)> {
    let n = m.dim();
    let mut a = to_rational_rows(&m.rows());
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
        if p != col {
            a.swap(p, col);
            inv.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for c in 0..n {
            a[col][c] /= &pivot;
            inv[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
                let e = &f * &inv[col][c];
                inv[r][c] -= e;
            }
        }
    }
    let det_i = to_i64(&det)?;
    let mut adj = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            adj.set(i, j, to_i64(&(&inv[i][j] * &det))?);
        }
    }
    Ok((det_i, adj))
}

/// Counts of positive, negative and zero eigenvalues of a symmetric integer
/// matrix, by exact congruence diagonalization over the rationals.
///
/// A zero diagonal pivot with a nonzero off-diagonal entry `(i, j)` is
/// repaired by the congruence `row_i += row_j, col_i += col_j`, which makes
/// the new diagonal entry `2 m_ij`.
pub fn symmetric_inertia(m: &IntMatrix) -> (usize, usize, usize) {
    let n = m.dim();
    let mut a = to_rational_rows(&m.rows());
    let (mut plus, mut minus) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(ii, &i)| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (ii, i, j))
                });
                let Some((ii, i, j)) = pair else {
                    break;
                };
                for c in 0..n {
                    let x = a[j][c].clone();
                    a[i][c] += x;
                }
                for r in 0..n {
                    let x = a[r][j].clone();
                    a[r][i] += x;
                }
                ii
            }
        };
        let p = active.swap_remove(pivot);
        let d = a[p][p].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for &r in &active {
            if a[r][p].is_zero() {
                continue;
            }
            let f = &a[r][p] / &d;
            for &c in &active {
                let x = &f * &a[p][c];
                a[r][c] -= x;
            }
            a[r][p] = BigRational::zero();
        }
        for &c in &active {
            a[p][c] = BigRational::zero();
        }
    }
    (plus, minus, n - plus - minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 0, 1], vec![0, 1, 1]]), 2);
    }

    #[test]
    fn adjugate_identity() {
        let m = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let (det, adj) = det_and_adjugate(&m).unwrap();
        assert_eq!(det, 3);
        assert_eq!(adj.rows(), vec![vec![2, 1], vec![1, 2]]);
        let prod = m.mul(&adj).unwrap();
        assert_eq!(prod.rows(), vec![vec![3, 0], vec![0, 3]]);
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(symmetric_inertia(&m), (1, 1, 0));
        let m = IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(symmetric_inertia(&m), (1, 1, 1));
    }

    #[test]
    fn inertia_of_definite_forms() {
        let m = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(symmetric_inertia(&m), (2, 0, 0));
        let m = IntMatrix::from_rows(&[vec![-3, 0], vec![0, 0]]).unwrap();
        assert_eq!(symmetric_inertia(&m), (0, 1, 1));
    }
}
