//! Code generators and the Hamming/Euclidean parameter conversions.

mod bch;
mod gf;

pub use bch::{bch_parity_matrix, bch_parity_matrix_with_poly};
pub use gf::{default_primitive_poly, Gf2mField};

use num_bigint::BigInt;

use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rng::SplitMix64;

/// Uniform random `n x m` code from SplitMix64.
///
/// Entries are taken in row-major order, one 64-bit output per 64 entries,
/// least significant bit first. Entry `e` is bit `e % 64` of output `e / 64`.
pub fn random_code(n: usize, m: usize, seed: u64) -> Result<BinaryCode> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyCode { n, m });
    }
    let total = n * m;
    let mut rng = SplitMix64::new(seed);
    let mut bits = Vec::with_capacity(total);
    while bits.len() < total {
        let word = rng.next_u64();
        let take = (total - bits.len()).min(64);
        bits.extend((0..take).map(|b| ((word >> b) & 1) as u8));
    }
    BinaryCode::new(n, m, bits)
}

/// Matching noise parameters for a Hamming/Euclidean code pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionResult {
    pub t: u64,
    /// Noise support bound of the Hamming property.
    pub support: u64,
    /// Squared noise radius of the Euclidean property, kept exact.
    pub delta_sq: Rational,
}

/// A Hamming `(t, T)` code is a Euclidean `(t, delta)` code for
/// `delta^2 = 2T / (2t(t-1))^2`.
///
/// Undefined for `t < 2` (the denominator vanishes), which is rejected.
pub fn delta_from_support(t: u64, support: u64) -> Result<ConversionResult> {
    if t < 2 {
        return Err(Error::param(format!(
            "coalition bound t = {t}: the noise radius is only defined for t >= 2"
        )));
    }
    let gap_inv = BigInt::from(2u64) * t * (t - 1);
    let delta_sq = Rational::new(BigInt::from(2u64) * support, &gap_inv * &gap_inv)?;
    Ok(ConversionResult {
        t,
        support,
        delta_sq,
    })
}

/// A Euclidean `(t, delta)` code is a Hamming `(t, T)` code for
/// `T = floor(2 delta^2)`.
pub fn support_from_delta(delta_sq: &Rational) -> Result<u64> {
    if delta_sq.is_negative() {
        return Err(Error::param(format!("negative squared radius {delta_sq}")));
    }
    let doubled = delta_sq * &Rational::from_integer(2);
    u64::try_from(doubled.floor()).map_err(|_| Error::param("noise support does not fit in u64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row_is_first_word_lsb_first() {
        // SplitMix64(0) first output, a published reference value
        let word: u64 = 0xE220_A839_7B1D_CDAF;
        let code = random_code(1, 64, 0).unwrap();
        let expected: Vec<u8> = (0..64).map(|b| ((word >> b) & 1) as u8).collect();
        assert_eq!(code.row(0), expected.as_slice());
    }

    #[test]
    fn words_span_rows() {
        // 3 x 30 = 90 entries: the second row starts at bit 30 of word 0
        let code = random_code(3, 30, 77).unwrap();
        let mut g = SplitMix64::new(77);
        let (w0, w1) = (g.next_u64(), g.next_u64());
        assert_eq!(code.bit(1, 0), ((w0 >> 30) & 1) as u8);
        assert_eq!(code.bit(2, 3), ((w0 >> 63) & 1) as u8);
        assert_eq!(code.bit(2, 4), (w1 & 1) as u8);
    }

    #[test]
    fn deterministic_and_balanced() {
        assert_eq!(random_code(5, 7, 3).unwrap(), random_code(5, 7, 3).unwrap());
        assert_ne!(random_code(5, 7, 3).unwrap(), random_code(5, 7, 4).unwrap());
        let code = random_code(256, 256, 1).unwrap();
        let frac = code.ones() as f64 / (256.0 * 256.0);
        assert!((0.47..=0.53).contains(&frac), "ones fraction {frac}");
        assert!(random_code(0, 3, 1).is_err());
    }

    #[test]
    fn delta_from_support_values() {
        let r = |p, q| Rational::new(p, q).unwrap();
        assert_eq!(delta_from_support(2, 1).unwrap().delta_sq, r(1, 8));
        assert_eq!(delta_from_support(3, 2).unwrap().delta_sq, r(1, 36));
        assert!(delta_from_support(2, 0).unwrap().delta_sq.is_zero());
        assert!(delta_from_support(1, 3).is_err());
        assert!(delta_from_support(0, 3).is_err());
    }

    #[test]
    fn support_from_delta_values() {
        let r = |p, q| Rational::new(p, q).unwrap();
        assert_eq!(support_from_delta(&r(1, 1)).unwrap(), 2);
        assert_eq!(support_from_delta(&r(1, 4)).unwrap(), 0);
        assert_eq!(support_from_delta(&r(9, 4)).unwrap(), 4);
        assert!(support_from_delta(&r(-1, 4)).is_err());
    }

    #[test]
    fn conversion_round_trip_never_increases() {
        for t in 2..8 {
            for support in 0..50 {
                let back = support_from_delta(&delta_from_support(t, support).unwrap().delta_sq);
                assert!(back.unwrap() <= support);
            }
        }
    }
}
