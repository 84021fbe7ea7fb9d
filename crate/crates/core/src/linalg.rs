//! Exact rank over the rationals by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix over `Q`. Every row must have the same length.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let height = a.len();
    let width = a.first().map_or(0, Vec::len);

    let mut rank = 0;
    let mut prev_pivot = BigInt::from(1);
    for col in 0..width {
        if rank == height {
            break;
        }
        let Some(p) = (rank..height).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..height {
            for j in col + 1..width {
                // exact: the division is by the previous pivot, a minor of the matrix
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev_pivot;
            }
            a[i][col] = BigInt::zero();
        }
        prev_pivot = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of the submatrix of `code` formed by 0-based columns `cols`.
pub fn column_rank(code: &crate::BinaryCode, cols: &[usize]) -> usize {
    // Transposed: one row per selected column; rank is unchanged.
    let rows: Vec<Vec<i64>> = cols
        .iter()
        .map(|&j| (0..code.n()).map(|i| code.bit(i, j) as i64).collect())
        .collect();
    rank(&rows)
}
