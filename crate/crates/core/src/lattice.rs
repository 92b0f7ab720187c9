//! Integer row reduction for sublattices of `ℤ^m`.

use crate::error::{Error, Result};

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

/// `rows[dst] -= q · rows[src]`.
fn sub_row(rows: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Result<()> {
    for j in 0..rows[dst].len() {
        let t = checked(q.checked_mul(rows[src][j]))?;
        rows[dst][j] = checked(rows[dst][j].checked_sub(t))?;
    }
    Ok(())
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`:
/// nonzero rows in echelon form with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`.
pub fn hermite_basis(vectors: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<i128>>> {
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            Ok(v.iter().map(|&x| x as i128).collect())
        })
        .collect::<Result<_>>()?;
    let mut top = 0;
    for col in 0..dim {
        if top == rows.len() {
            break;
        }
        loop {
            let pivot = (top..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].unsigned_abs());
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(rows[top][col]);
                    sub_row(&mut rows, i, top, q)?;
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col] == 0 {
            continue;
        }
        if rows[top][col] < 0 {
            for x in &mut rows[top] {
                *x = checked(x.checked_neg())?;
            }
        }
        for i in 0..top {
            let q = rows[i][col].div_euclid(rows[top][col]);
            sub_row(&mut rows, i, top, q)?;
        }
        top += 1;
    }
    rows.truncate(top);
    Ok(rows)
}

/// Rank of the spanned lattice and, when it has full rank `dim`, its index
/// in `ℤ^dim`.
pub fn rank_and_index(vectors: &[Vec<i64>], dim: usize) -> Result<(usize, Option<u128>)> {
    let basis = hermite_basis(vectors, dim)?;
    if basis.len() < dim {
        return Ok((basis.len(), None));
    }
    let index = basis
        .iter()
        .enumerate()
        .try_fold(1u128, |acc, (i, row)| acc.checked_mul(row[i] as u128))
        .ok_or(Error::Overflow)?;
    Ok((dim, Some(index)))
}
