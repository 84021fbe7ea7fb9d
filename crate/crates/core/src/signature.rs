//! Averaged signatures and exact signature differences.
//!
//! A signature is kept as integer column sums over the coalition size, so
//! two signatures of sizes `q` and `r` are compared coordinatewise by the
//! cross products `r * counts1[i]` and `q * counts2[i]`. No floating point
//! is involved.

use num_bigint::BigInt;

use crate::coalition::Coalition;
use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The averaged fingerprint of a coalition, `counts[i] / size` per row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    counts: Vec<u32>,
    size: u32,
}

impl Signature {
    pub fn new(counts: Vec<u32>, size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::param("signature size must be positive"));
        }
        if let Some(&c) = counts.iter().find(|&&c| c > size) {
            return Err(Error::param(format!("count {c} exceeds coalition size {size}")));
        }
        Ok(Signature { counts, size })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Exact value of coordinate `i`.
    pub fn value(&self, i: usize) -> Rational {
        Rational::new(self.counts[i], self.size).expect("size is positive")
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    /// Nearest `f64` per coordinate (for the real-valued pipeline only).
    pub fn to_f64(&self) -> Vec<f64> {
        let q = self.size as f64;
        self.counts.iter().map(|&c| c as f64 / q).collect()
    }

    /// Cross-multiplied difference `r * c1[i] - q * c2[i]`, which equals
    /// `q * r * (self[i] - other[i])`.
    #[inline]
    pub(crate) fn scaled_diff(&self, other: &Signature, i: usize) -> i64 {
        other.size as i64 * self.counts[i] as i64 - self.size as i64 * other.counts[i] as i64
    }

    /// Full statistics of `self - other`.
    pub fn delta(&self, other: &Signature) -> DeltaStats {
        assert_eq!(self.len(), other.len(), "signature lengths differ");
        let mut support = 0usize;
        let mut sum_sq: u128 = 0;
        let mut min_abs: Option<u64> = None;
        for i in 0..self.len() {
            let d = self.scaled_diff(other, i);
            if d != 0 {
                support += 1;
                let a = d.unsigned_abs();
                sum_sq += (a as u128) * (a as u128);
                min_abs = Some(min_abs.map_or(a, |m| m.min(a)));
            }
        }
        let qr = self.size as u64 * other.size as u64;
        let qr_sq = BigInt::from(qr) * BigInt::from(qr);
        DeltaStats {
            support_size: support,
            norm_sq: Rational::new(BigInt::from(sum_sq), qr_sq).expect("nonzero"),
            min_nonzero_abs: min_abs.map(|a| Rational::new(a, qr).expect("nonzero")),
        }
    }

    /// Whether more than `limit` coordinates differ; stops once they do.
    #[inline]
    pub(crate) fn support_exceeds(&self, other: &Signature, limit: usize) -> bool {
        let mut support = 0usize;
        for i in 0..self.len() {
            if self.scaled_diff(other, i) != 0 {
                support += 1;
                if support > limit {
                    return true;
                }
            }
        }
        false
    }

    /// Whether `sum_i scaled_diff^2 > threshold`; stops once it is.
    #[inline]
    pub(crate) fn scaled_norm_exceeds(&self, other: &Signature, threshold: u128) -> bool {
        let mut acc: u128 = 0;
        for i in 0..self.len() {
            let d = self.scaled_diff(other, i).unsigned_abs() as u128;
            acc += d * d;
            if acc > threshold {
                return true;
            }
        }
        false
    }
}

/// Exact statistics of `sigma(H|I1) - sigma(H|I2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaStats {
    /// Number of coordinates where the signatures differ.
    pub support_size: usize,
    /// Squared Euclidean norm of the difference.
    pub norm_sq: Rational,
    /// Smallest nonzero `|delta_i|`, absent when the signatures coincide.
    pub min_nonzero_abs: Option<Rational>,
}

/// The result of the averaging attack by coalition `coalition`.
pub fn average_signature(code: &BinaryCode, coalition: &Coalition) -> Result<Signature> {
    coalition.check_range(code.m())?;
    let cols: Vec<usize> = coalition.indices().iter().map(|j| j - 1).collect();
    let counts = (0..code.n())
        .map(|i| {
            let row = code.row(i);
            cols.iter().map(|&j| row[j] as u32).sum()
        })
        .collect();
    Ok(Signature {
        counts,
        size: coalition.len() as u32,
    })
}

/// Difference statistics between the signatures of two distinct coalitions.
pub fn delta_stats(code: &BinaryCode, i1: &Coalition, i2: &Coalition) -> Result<DeltaStats> {
    if i1 == i2 {
        return Err(Error::IdenticalCoalitions);
    }
    let s1 = average_signature(code, i1)?;
    let s2 = average_signature(code, i2)?;
    Ok(s1.delta(&s2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn c(v: &[usize]) -> Coalition {
        Coalition::new(v.to_vec()).unwrap()
    }

    fn small() -> BinaryCode {
        BinaryCode::from_columns(&[[1, 0, 1], [1, 1, 0]]).unwrap()
    }

    #[test]
    fn average_of_two_columns() {
        let sig = average_signature(&small(), &c(&[1, 2])).unwrap();
        assert_eq!(sig.counts(), &[2, 1, 1]);
        assert_eq!(sig.size(), 2);
        assert_eq!(sig.values(), vec![r(1, 1), r(1, 2), r(1, 2)]);
    }

    #[test]
    fn singleton_is_the_column() {
        let code = small();
        for j in 1..=2 {
            let sig = average_signature(&code, &c(&[j])).unwrap();
            let col: Vec<u32> = code.column(j - 1).into_iter().map(u32::from).collect();
            assert_eq!(sig.counts(), col.as_slice());
        }
    }

    #[test]
    fn all_ones_average() {
        let code = BinaryCode::new(4, 3, vec![1; 12]).unwrap();
        let sig = average_signature(&code, &c(&[1, 2, 3])).unwrap();
        assert!(sig.values().iter().all(|v| *v == 1));
    }

    #[test]
    fn out_of_range_index() {
        assert!(matches!(
            average_signature(&small(), &c(&[3])),
            Err(Error::IndexOutOfRange { index: 3, m: 2 })
        ));
    }

    #[test]
    fn delta_between_singletons() {
        let d = delta_stats(&small(), &c(&[1]), &c(&[2])).unwrap();
        assert_eq!(d.support_size, 2);
        assert_eq!(d.norm_sq, r(2, 1));
        assert_eq!(d.min_nonzero_abs, Some(r(1, 1)));
    }

    #[test]
    fn delta_with_subset() {
        // (1, 1/2, 1/2) - (1, 0, 1) = (0, 1/2, -1/2)
        let d = delta_stats(&small(), &c(&[1, 2]), &c(&[1])).unwrap();
        assert_eq!(d.support_size, 2);
        assert_eq!(d.norm_sq, r(1, 2));
        assert_eq!(d.min_nonzero_abs, Some(r(1, 2)));
    }

    #[test]
    fn delta_of_equal_signatures() {
        let code = BinaryCode::from_columns(&[[1, 0], [1, 0], [0, 1]]).unwrap();
        let d = delta_stats(&code, &c(&[1]), &c(&[2])).unwrap();
        assert_eq!(d.support_size, 0);
        assert!(d.norm_sq.is_zero());
        assert_eq!(d.min_nonzero_abs, None);
        let d = delta_stats(&code, &c(&[1, 3]), &c(&[2, 3])).unwrap();
        assert_eq!(d.support_size, 0);
    }

    #[test]
    fn identical_coalitions_rejected() {
        assert!(matches!(
            delta_stats(&small(), &c(&[1]), &c(&[1])),
            Err(Error::IdenticalCoalitions)
        ));
    }

    #[test]
    fn early_exit_helpers_agree_with_full_stats() {
        let code = small();
        let a = average_signature(&code, &c(&[1, 2])).unwrap();
        let b = average_signature(&code, &c(&[2])).unwrap();
        let d = a.delta(&b);
        for limit in 0..4 {
            assert_eq!(a.support_exceeds(&b, limit), d.support_size > limit);
        }
        // scaled norm = norm_sq * (qr)^2
        let scaled = (d.norm_sq.clone() * Rational::from_integer(4)).floor();
        let scaled: u128 = scaled.try_into().unwrap();
        assert!(a.scaled_norm_exceeds(&b, scaled - 1));
        assert!(!a.scaled_norm_exceeds(&b, scaled));
    }
}
