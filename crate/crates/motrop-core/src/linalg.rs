//! Minimal exact linear algebra over the rationals: row reduction, rank, and
//! small dense solves. Only what the polyhedral layer needs.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

/// Reduce `m` to row echelon form in place, pivoting only on the first
/// `pivot_cols` columns; returns the rank.
pub fn row_echelon_limited(m: &mut [Vec<BigRational>], pivot_cols: usize) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..pivot_cols.min(cols) {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for c in col..cols {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduce `m` to row echelon form in place; returns the rank.
pub fn row_echelon(m: &mut [Vec<BigRational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    row_echelon_limited(m, cols)
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    row_echelon(&mut m)
}

/// Solve the square system `a x = b` exactly. Returns `None` if `a` is
/// singular.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let rank = row_echelon_limited(&mut m, n);
    if rank < n {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}
