use super::gf::{default_primitive_poly, Gf2mField};
use crate::code::BinaryCode;
use crate::error::{Error, Result};

/// Binary expansion of the narrow-sense BCH parity-check matrix with
/// designed distance `2t + 1` over `GF(2^m)`.
///
/// One block of `m` rows per odd exponent `i = 1, 3, ..., 2t - 1`; column
/// `j` of block `i` holds `alpha^(i*j)` written as the coefficients of
/// `x^0 .. x^(m-1)`, top to bottom. The result is `t*m x (2^m - 1)`.
pub fn bch_parity_matrix(m: u32, t: u32) -> Result<BinaryCode> {
    let poly = default_primitive_poly(m)
        .ok_or_else(|| Error::param(format!("field degree m = {m} outside [2, 16]")))?;
    bch_parity_matrix_with_poly(m, t, poly)
}

pub fn bch_parity_matrix_with_poly(m: u32, t: u32, poly: u32) -> Result<BinaryCode> {
    let field = Gf2mField::with_poly(m, poly)?;
    let len = field.order() as usize;
    if t == 0 {
        return Err(Error::param("BCH correction capability t must be at least 1"));
    }
    if 2 * t as u64 + 1 > len as u64 {
        return Err(Error::param(format!(
            "designed distance {} exceeds the field size {len}",
            2 * t + 1
        )));
    }
    let m = m as usize;
    let rows = t as usize * m;
    let mut bits = vec![0u8; rows * len];
    for (block, i) in (1..2 * t as u64).step_by(2).enumerate() {
        for j in 0..len {
            let elem = field.pow_alpha(i * j as u64);
            for l in 0..m {
                bits[(block * m + l) * len + j] = ((elem >> l) & 1) as u8;
            }
        }
    }
    BinaryCode::new(rows, len, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_7_4_parity_check() {
        // powers of alpha under x^3 + x + 1, worked by hand:
        // 1, a, a^2, a+1, a^2+a, a^2+a+1, a^2+1
        let cols = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 1, 1],
            [1, 0, 1],
        ];
        let expected = BinaryCode::from_columns(&cols).unwrap();
        assert_eq!(bch_parity_matrix(3, 1).unwrap(), expected);
    }

    #[test]
    fn shape_and_rate() {
        let code = bch_parity_matrix(4, 2).unwrap();
        assert_eq!((code.n(), code.m()), (8, 15));
        for (m, t) in [(3, 1), (4, 2), (5, 2), (6, 3), (8, 4)] {
            let code = bch_parity_matrix(m, t).unwrap();
            let rate = ((code.m() + 1) as f64).log2() / code.n() as f64;
            assert_eq!(rate, 1.0 / t as f64);
        }
    }

    #[test]
    fn parameter_bounds() {
        // 2t + 1 = 7 <= 7 is allowed
        assert_eq!(bch_parity_matrix(3, 3).unwrap().n(), 9);
        // 5 > 3
        assert!(bch_parity_matrix(2, 2).is_err());
        assert!(bch_parity_matrix(1, 1).is_err());
        assert!(bch_parity_matrix(17, 1).is_err());
        assert!(bch_parity_matrix(4, 0).is_err());
    }

    #[test]
    fn columns_are_distinct_and_nonzero() {
        let code = bch_parity_matrix(5, 2).unwrap();
        let mut cols: Vec<Vec<u8>> = (0..code.m()).map(|j| code.column(j)).collect();
        assert!(cols.iter().all(|c| c.contains(&1)));
        cols.sort();
        cols.dedup();
        assert_eq!(cols.len(), code.m());
    }
}
