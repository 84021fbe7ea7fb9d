//! Exhaustive verification of traceability properties.
//!
//! All unordered pairs of distinct coalitions of size at most `t` are
//! examined. Coalitions follow the canonical (size, lexicographic) order and
//! pairs `(I1, I2)` with `I1 < I2` are ordered lexicographically by the
//! positions of `I1` and `I2`. The search is split across rayon workers, but
//! the reported witness is always the first violating pair in this order, so
//! reports do not depend on the number of threads.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coalition::{all_coalitions, Coalition, Combinations};
use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::linalg::column_rank;
use crate::rational::Rational;
use crate::signature::{average_signature, DeltaStats, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    HammingLtc,
    EuclideanLtc,
    #[serde(rename = "independence_2t")]
    Independence2t,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::HammingLtc => "hamming_ltc",
            Property::EuclideanLtc => "euclidean_ltc",
            Property::Independence2t => "independence_2t",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    Hamming { support: u64 },
    Euclidean { delta_sq: Rational },
    Independence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two distinct coalitions whose signatures are too close.
    Pair {
        i1: Coalition,
        i2: Coalition,
        stats: DeltaStats,
    },
    /// 1-based columns that are linearly dependent over the rationals.
    Columns(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub property: Property,
    pub t: usize,
    pub params: Params,
    pub holds: bool,
    /// First violation in enumeration order; present iff `!holds`.
    pub witness: Option<Witness>,
    /// Pairs (or column subsets) examined up to and including the witness.
    pub pairs_checked: u64,
    /// Set when the verdict follows from dimensions alone.
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("property".into(), json!(self.property.name()));
        obj.insert("t".into(), json!(self.t));
        match &self.params {
            Params::Hamming { support } => {
                obj.insert("T".into(), json!(support));
            }
            Params::Euclidean { delta_sq } => {
                obj.insert("delta_sq".into(), json!(delta_sq.to_string()));
            }
            Params::Independence => {}
        }
        obj.insert("holds".into(), json!(self.holds));
        obj.insert("pairs_checked".into(), json!(self.pairs_checked));
        let witness = match &self.witness {
            None => Value::Null,
            Some(Witness::Pair { i1, i2, stats }) => json!({
                "I1": i1.indices(),
                "I2": i2.indices(),
                "support_size": stats.support_size,
                "norm_sq": stats.norm_sq.to_string(),
            }),
            Some(Witness::Columns(cols)) => json!({ "columns": cols }),
        };
        obj.insert("witness".into(), witness);
        if let Some(note) = &self.note {
            obj.insert("note".into(), json!(note));
        }
        Value::Object(obj)
    }
}

/// Signatures of every coalition of size `1..=t`, in canonical order.
pub struct SignatureTable {
    pub coalitions: Vec<Coalition>,
    pub signatures: Vec<Signature>,
}

impl SignatureTable {
    pub fn build(code: &BinaryCode, t: usize) -> Result<Self> {
        check_t(code, t)?;
        let coalitions = all_coalitions(code.m(), t);
        let signatures = coalitions
            .par_iter()
            .map(|c| average_signature(code, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(SignatureTable {
            coalitions,
            signatures,
        })
    }

    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    /// First pair `(i, j)`, `i < j`, for which `violates` holds.
    fn first_violation<F>(&self, violates: F) -> Option<(usize, usize)>
    where
        F: Fn(&Signature, &Signature) -> bool + Sync,
    {
        let sigs = &self.signatures;
        (0..sigs.len()).into_par_iter().find_map_first(|i| {
            (i + 1..sigs.len())
                .find(|&j| violates(&sigs[i], &sigs[j]))
                .map(|j| (i, j))
        })
    }

    fn pair_report(
        &self,
        property: Property,
        t: usize,
        params: Params,
        violation: Option<(usize, usize)>,
    ) -> VerificationReport {
        let c = self.len() as u64;
        let total = c * c.saturating_sub(1) / 2;
        let (holds, witness, pairs_checked) = match violation {
            None => (true, None, total),
            Some((i, j)) => {
                let (i64_, j64) = (i as u64, j as u64);
                let before = i64_ * (c - 1) - i64_ * i64_.saturating_sub(1) / 2;
                let witness = Witness::Pair {
                    i1: self.coalitions[i].clone(),
                    i2: self.coalitions[j].clone(),
                    stats: self.signatures[i].delta(&self.signatures[j]),
                };
                (false, Some(witness), before + (j64 - i64_))
            }
        };
        VerificationReport {
            property,
            t,
            params,
            holds,
            witness,
            pairs_checked,
            note: None,
        }
    }
}

fn check_t(code: &BinaryCode, t: usize) -> Result<()> {
    if t == 0 || t > code.m() {
        return Err(Error::param(format!(
            "coalition bound t = {t} outside [1, M = {}]",
            code.m()
        )));
    }
    Ok(())
}

/// Hamming `(t, T)` light complete traceability: the signatures of any two
/// distinct coalitions of size at most `t` differ in more than `2T`
/// coordinates.
pub fn is_hamming_ltc(code: &BinaryCode, t: usize, support: u64) -> Result<VerificationReport> {
    let table = SignatureTable::build(code, t)?;
    Ok(hamming_on_table(&table, t, support))
}

pub fn hamming_on_table(table: &SignatureTable, t: usize, support: u64) -> VerificationReport {
    let limit = usize::try_from(support.saturating_mul(2)).unwrap_or(usize::MAX);
    let violation = table.first_violation(|a, b| !a.support_exceeds(b, limit));
    table.pair_report(Property::HammingLtc, t, Params::Hamming { support }, violation)
}

/// Euclidean `(t, delta)` light complete traceability: the signatures of any
/// two distinct coalitions of size at most `t` are more than `2 delta` apart.
pub fn is_euclidean_ltc(
    code: &BinaryCode,
    t: usize,
    delta_sq: &Rational,
) -> Result<VerificationReport> {
    if delta_sq.is_negative() {
        return Err(Error::param(format!("negative squared radius {delta_sq}")));
    }
    let table = SignatureTable::build(code, t)?;
    Ok(euclidean_on_table(&table, t, delta_sq))
}

pub fn euclidean_on_table(
    table: &SignatureTable,
    t: usize,
    delta_sq: &Rational,
) -> VerificationReport {
    // norm_sq > 4 delta^2  <=>  S > floor(4 delta^2 (qr)^2), where S is the
    // integer sum of squared cross-multiplied differences.
    let four_delta_sq = delta_sq * &Rational::from_integer(4);
    let thresholds: Vec<Vec<u128>> = (0..=t)
        .map(|q| {
            (0..=t)
                .map(|r| {
                    let qr = BigInt::from(q * r);
                    let bound = (&four_delta_sq * &Rational::from_integer(&qr * &qr)).floor();
                    u128::try_from(bound).unwrap_or(u128::MAX)
                })
                .collect()
        })
        .collect();
    let violation = table.first_violation(|a, b| {
        let thr = thresholds[a.size() as usize][b.size() as usize];
        !a.scaled_norm_exceeds(b, thr)
    });
    table.pair_report(
        Property::EuclideanLtc,
        t,
        Params::Euclidean {
            delta_sq: delta_sq.clone(),
        },
        violation,
    )
}

const SUBSET_CHUNK: usize = 4096;

/// Every `2t` columns are linearly independent over the rationals, the
/// sufficient condition for complete traceability without noise.
pub fn check_2t_independence(code: &BinaryCode, t: usize) -> Result<VerificationReport> {
    if t == 0 {
        return Err(Error::param("t must be at least 1"));
    }
    let k = 2 * t;
    if k > code.m() {
        return Err(Error::param(format!(
            "2t = {k} exceeds the number of columns M = {}",
            code.m()
        )));
    }
    let report = |holds, witness, pairs_checked, note| VerificationReport {
        property: Property::Independence2t,
        t,
        params: Params::Independence,
        holds,
        witness,
        pairs_checked,
        note,
    };
    if k > code.n() {
        return Ok(report(
            false,
            Some(Witness::Columns((1..=k).collect())),
            0,
            Some(format!("2t = {k} exceeds the code length n = {}; rank 2t is impossible", code.n())),
        ));
    }

    let mut subsets = Combinations::new(code.m(), k);
    let mut checked: u64 = 0;
    loop {
        let chunk: Vec<Vec<usize>> = subsets.by_ref().take(SUBSET_CHUNK).collect();
        if chunk.is_empty() {
            return Ok(report(true, None, checked, None));
        }
        let hit = chunk.par_iter().position_first(|cols| {
            let zero_based: Vec<usize> = cols.iter().map(|j| j - 1).collect();
            column_rank(code, &zero_based) < k
        });
        if let Some(pos) = hit {
            checked += pos as u64 + 1;
            return Ok(report(false, Some(Witness::Columns(chunk[pos].clone())), checked, None));
        }
        checked += chunk.len() as u64;
    }
}
