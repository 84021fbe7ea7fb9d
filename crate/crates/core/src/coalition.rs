//! Coalitions of users and their canonical enumeration order.
//!
//! Coalitions are ordered first by size, then lexicographically by their
//! (1-based, increasing) index lists. Verification witnesses and decoder tie
//! breaks are all defined in terms of this order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty set of 1-based user indices, stored strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Coalition {
    indices: Vec<usize>,
}

impl Coalition {
    /// Accepts indices in any order; rejects empty input, zero and duplicates.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        indices.sort_unstable();
        if indices[0] == 0 {
            return Err(Error::IndexOutOfRange { index: 0, m: usize::MAX });
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(w[0]));
        }
        Ok(Coalition { indices })
    }

    pub fn singleton(index: usize) -> Result<Self> {
        Coalition::new(vec![index])
    }

    /// Indices that are already strictly increasing and 1-based.
    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(!indices.is_empty() && indices[0] >= 1);
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Coalition { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// Checks every index lies in `[1, m]`.
    pub fn check_range(&self, m: usize) -> Result<()> {
        match self.indices.last() {
            Some(&last) if last > m => Err(Error::IndexOutOfRange { index: last, m }),
            _ => Ok(()),
        }
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Coalition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Coalition::new(v)
    }
}

impl From<Coalition> for Vec<usize> {
    fn from(c: Coalition) -> Self {
        c.indices
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Parses `"1,3,4"`, optionally wrapped in braces or brackets.
impl FromStr for Coalition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['{', '['])
            .trim_end_matches(['}', ']']);
        let indices = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::parse("coalition", s)))
            .collect::<Result<Vec<_>>>()?;
        Coalition::new(indices)
    }
}

/// Lexicographic `k`-subsets of `{1, ..., m}`.
#[derive(Clone, Debug)]
pub struct Combinations {
    m: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(m: usize, k: usize) -> Self {
        let current = (k >= 1 && k <= m).then(|| (1..=k).collect());
        Combinations { m, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let k = cur.len();
        // rightmost position that can still be incremented
        match (0..k).rev().find(|&i| cur[i] < self.m - (k - 1 - i)) {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// All coalitions of size `1..=t` over `m` users, in canonical order.
pub fn all_coalitions(m: usize, t: usize) -> Vec<Coalition> {
    (1..=t.min(m))
        .flat_map(|q| Combinations::new(m, q))
        .map(Coalition::from_sorted_unchecked)
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `sum_{q=1}^{t} C(m, q)`, the number of candidate coalitions.
pub fn coalition_count(m: usize, t: usize) -> u128 {
    (1..=t.min(m) as u64).map(|q| binomial(m as u64, q)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(matches!(Coalition::new(vec![]), Err(Error::EmptyCoalition)));
        assert!(matches!(Coalition::new(vec![2, 2]), Err(Error::DuplicateIndex(2))));
        assert!(Coalition::new(vec![0, 1]).is_err());
        let c = Coalition::new(vec![3, 1]).unwrap();
        assert_eq!(c.indices(), &[1, 3]);
        assert!(c.check_range(3).is_ok());
        assert!(matches!(c.check_range(2), Err(Error::IndexOutOfRange { index: 3, m: 2 })));
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let all = all_coalitions(3, 3);
        let shown: Vec<String> = all.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            shown,
            ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn counts_match_enumeration() {
        for m in 1..=9 {
            for t in 1..=4 {
                assert_eq!(all_coalitions(m, t).len() as u128, coalition_count(m, t));
            }
        }
        assert_eq!(binomial(15, 4), 1365);
        assert_eq!(binomial(4, 5), 0);
    }

    #[test]
    fn parse_and_display() {
        let c: Coalition = "{2, 1}".parse().unwrap();
        assert_eq!(c.to_string(), "{1,2}");
        assert_eq!("[4]".parse::<Coalition>().unwrap().indices(), &[4]);
        assert!("1,,2".parse::<Coalition>().is_err());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "[1,2]");
        assert!(serde_json::from_str::<Coalition>("[1,1]").is_err());
    }
}
