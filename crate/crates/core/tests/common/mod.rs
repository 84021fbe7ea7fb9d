//! Reference implementations used as oracles by the integration tests.
//! They share no code with the library beyond the code matrix itself.
#![allow(dead_code)]

use fptrace::BinaryCode;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// All coalitions of size 1..=t, ordered by size then lexicographically.
pub fn coalitions(m: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..=m {
            cur.push(j);
            rec(j + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=t.min(m) {
        rec(1, m, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Averaged signature as reduced fractions.
pub fn signature(code: &BinaryCode, coalition: &[usize]) -> Vec<BigRational> {
    let q = BigInt::from(coalition.len());
    (0..code.n())
        .map(|row| {
            let ones: usize = coalition.iter().map(|&j| code.bit(row, j - 1) as usize).sum();
            BigRational::new(BigInt::from(ones), q.clone())
        })
        .collect()
}

pub fn support(a: &[BigRational], b: &[BigRational]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn norm_sq(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + (x - y) * (x - y))
}

pub fn min_nonzero_abs(a: &[BigRational], b: &[BigRational]) -> Option<BigRational> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .filter(|d| !d.is_zero())
        .min()
}

type Pair = (Vec<usize>, Vec<usize>);

fn first_violation(code: &BinaryCode, t: usize, bad: impl Fn(&[BigRational], &[BigRational]) -> bool) -> Option<Pair> {
    let cs = coalitions(code.m(), t);
    let sigs: Vec<_> = cs.iter().map(|c| signature(code, c)).collect();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if bad(&sigs[i], &sigs[j]) {
                return Some((cs[i].clone(), cs[j].clone()));
            }
        }
    }
    None
}

/// First pair whose signatures differ in at most 2T places.
pub fn naive_hamming(code: &BinaryCode, t: usize, big_t: u64) -> Option<Pair> {
    first_violation(code, t, |a, b| support(a, b) as u64 <= 2 * big_t)
}

/// First pair whose squared distance is at most 4 delta^2.
pub fn naive_euclidean(code: &BinaryCode, t: usize, delta_sq: &BigRational) -> Option<Pair> {
    let bound = delta_sq * BigRational::from_integer(BigInt::from(4));
    first_violation(code, t, |a, b| norm_sq(a, b) <= bound)
}
