//! Bad-row probabilities, the achievable-rate bound, and randomized search.
//!
//! A row is *bad* for coalitions `I1` (size `q`) and `I2` (size `r`) when
//! the fractions of ones the two coalitions see in it coincide. For a
//! uniformly random code this depends only on `(q, r, k)`, `k = |I1 ∩ I2|`:
//! the `k` shared columns contribute `x_s` ones, the `q - k` columns only in
//! `I1` contribute `x1` and the `r - k` only in `I2` contribute `x2`, and the
//! row is bad iff `r (x_s + x1) = q (x_s + x2)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::BinaryCode;
use crate::construct::random_code;
use crate::entropy::binary_entropy;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rng::{derive_seed, SplitMix64};
use crate::verify::is_hamming_ltc;

fn check_triple(q: u32, r: u32, k: u32) -> Result<()> {
    if r == 0 || r > q {
        return Err(Error::param(format!("need q >= r >= 1, got q = {q}, r = {r}")));
    }
    if k > r {
        return Err(Error::param(format!("intersection k = {k} exceeds r = {r}")));
    }
    if q == r && k == q {
        return Err(Error::param("coalitions with q = r = k coincide"));
    }
    Ok(())
}

/// Every admissible `(q, r, k)` with `q <= max_q`, in lexicographic order.
pub fn admissible_triples(max_q: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for q in 1..=max_q {
        for r in 1..=q {
            for k in 0..=r {
                if !(q == r && k == q) {
                    out.push((q, r, k));
                }
            }
        }
    }
    out
}

fn pascal_row(n: u32) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 0..n {
        let next = &row[i as usize] * BigUint::from(n - i) / BigUint::from(i + 1);
        row.push(next);
    }
    row
}

/// Exact probability that a uniformly random row is bad for a pair with
/// sizes `q >= r` and intersection `k`.
pub fn exact_bad_row_prob(q: u32, r: u32, k: u32) -> Result<Rational> {
    check_triple(q, r, k)?;
    let (shared, only1, only2) = (pascal_row(k), pascal_row(q - k), pascal_row(r - k));
    let mut total = BigUint::default();
    for xs in 0..=k as u64 {
        for x1 in 0..=(q - k) as u64 {
            let lhs = r as u64 * (xs + x1);
            if !lhs.is_multiple_of(q as u64) {
                continue;
            }
            let Some(x2) = (lhs / q as u64).checked_sub(xs) else {
                continue;
            };
            if x2 > (r - k) as u64 {
                continue;
            }
            total += &shared[xs as usize] * &only1[x1 as usize] * &only2[x2 as usize];
        }
    }
    Rational::new(BigInt::from(total), BigInt::one() << (q + r - k) as usize)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub frequency: f64,
    /// Binomial standard error; `0.5 / sqrt(trials)` when the frequency is 0 or 1.
    pub std_err: f64,
    pub hits: u64,
    pub trials: u64,
}

const MC_BLOCK: u64 = 1 << 14;

fn bits_set(words: &[u64], start: u32, len: u32) -> u32 {
    let mut total = 0;
    let mut pos = start;
    let end = start + len;
    while pos < end {
        let (w, b) = ((pos / 64) as usize, pos % 64);
        let take = (64 - b).min(end - pos);
        let mask = if take == 64 { u64::MAX } else { ((1u64 << take) - 1) << b };
        total += (words[w] & mask).count_ones();
        pos += take;
    }
    total
}

/// Monte Carlo estimate of [`exact_bad_row_prob`].
///
/// Each trial draws `q + r - k` fair bits from fresh 64-bit words, LSB
/// first: bits `[0, k)` are the shared columns, `[k, q)` the columns only in
/// `I1`, and the rest the columns only in `I2`. Trials run in blocks of
/// 16384 with one derived stream per block, so the estimate does not depend
/// on the thread count.
pub fn mc_bad_row_prob(q: u32, r: u32, k: u32, trials: u64, seed: u64) -> Result<McEstimate> {
    check_triple(q, r, k)?;
    if trials == 0 {
        return Err(Error::param("need at least one trial"));
    }
    let nbits = q + r - k;
    let nwords = nbits.div_ceil(64) as usize;
    let blocks = trials.div_ceil(MC_BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = SplitMix64::new(derive_seed(seed, b));
            let count = MC_BLOCK.min(trials - b * MC_BLOCK);
            let mut words = vec![0u64; nwords];
            let mut hits = 0u64;
            for _ in 0..count {
                words.iter_mut().for_each(|w| *w = rng.next_u64());
                let xs = bits_set(&words, 0, k) as u64;
                let x1 = bits_set(&words, k, q - k) as u64;
                let x2 = bits_set(&words, q, r - k) as u64;
                if r as u64 * (xs + x1) == q as u64 * (xs + x2) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let frequency = hits as f64 / trials as f64;
    let var = frequency * (1.0 - frequency);
    let var = if var == 0.0 { 0.25 } else { var };
    Ok(McEstimate {
        frequency,
        std_err: (var / trials as f64).sqrt(),
        hits,
        trials,
    })
}

/// The per-`q` bad-row bound `p(q)` used by the rate analysis.
#[derive(Clone, Debug, PartialEq)]
pub enum PModel {
    /// `p(q) = 1/2`.
    Conservative,
    /// `p(q) = min(1/2, q^(-1/3))`.
    Asymptotic,
    /// Worst exact probability over all opposing coalitions, tabulated.
    Empirical(EmpiricalTable),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalTable {
    /// `exact[q - 1]` is the maximum over `(r, k)` of the exact probability.
    pub exact: Vec<Rational>,
    /// Set if some maximum exceeded 1/2 and was clamped.
    pub clamped: bool,
}

impl PModel {
    /// Empirical model tabulated for `q = 1..=max_q`.
    pub fn empirical(max_q: u32) -> Result<Self> {
        if max_q == 0 {
            return Err(Error::param("empirical table needs max_q >= 1"));
        }
        let half = Rational::new(1, 2)?;
        let exact = (1..=max_q)
            .into_par_iter()
            .map(|q| {
                let mut best = Rational::zero();
                for r in 1..=q {
                    for k in 0..=r {
                        if q == r && k == q {
                            continue;
                        }
                        let p = exact_bad_row_prob(q, r, k)?;
                        if p > best {
                            best = p;
                        }
                    }
                }
                Ok(best)
            })
            .collect::<Result<Vec<_>>>()?;
        let clamped = exact.iter().any(|p| *p > half);
        if clamped {
            log::warn!("empirical bad-row probability above 1/2; clamping");
        }
        Ok(PModel::Empirical(EmpiricalTable { exact, clamped }))
    }

    pub fn name(&self) -> &'static str {
        match self {
            PModel::Conservative => "conservative",
            PModel::Asymptotic => "asymptotic",
            PModel::Empirical(_) => "empirical",
        }
    }

    pub fn p(&self, q: u32) -> Result<f64> {
        if q == 0 {
            return Err(Error::param("p(q) needs q >= 1"));
        }
        Ok(match self {
            PModel::Conservative => 0.5,
            PModel::Asymptotic => (q as f64).powf(-1.0 / 3.0).min(0.5),
            PModel::Empirical(table) => {
                let p = table.exact.get(q as usize - 1).ok_or_else(|| {
                    Error::param(format!(
                        "empirical table covers q <= {}, asked for q = {q}",
                        table.exact.len()
                    ))
                })?;
                p.to_f64().min(0.5)
            }
        })
    }
}

/// Model names accepted by [`FromStr`]; `empirical` needs a table size and is
/// built with [`PModel::empirical`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Conservative,
    Asymptotic,
    Empirical,
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conservative" => Ok(ModelKind::Conservative),
            "asymptotic" => Ok(ModelKind::Asymptotic),
            "empirical" => Ok(ModelKind::Empirical),
            _ => Err(Error::parse("p(q) model", s)),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Conservative => "conservative",
            ModelKind::Asymptotic => "asymptotic",
            ModelKind::Empirical => "empirical",
        })
    }
}

impl ModelKind {
    /// Build the model, tabulating `q <= t` for the empirical kind.
    pub fn build(self, t: u32) -> Result<PModel> {
        match self {
            ModelKind::Conservative => Ok(PModel::Conservative),
            ModelKind::Asymptotic => Ok(PModel::Asymptotic),
            ModelKind::Empirical => PModel::empirical(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateEstimate {
    pub r_hat: f64,
    pub argmin_q: u32,
    pub tau: f64,
    pub model: PModel,
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..0.5).contains(&tau) {
        return Err(Error::param(format!("tau = {tau} must lie in [0, 1/2)")));
    }
    Ok(())
}

/// Largest rate for which every exponent
/// `A(q) = 2qR + log2 p + h(tau) + tau log2((1-p)/p)` is negative:
/// `R = min_q -(log2 p + h(tau) + tau log2((1-p)/p)) / (2q)`.
pub fn rate_lower_bound(t: u32, tau: f64, model: &PModel) -> Result<RateEstimate> {
    if t == 0 {
        return Err(Error::param("t must be at least 1"));
    }
    check_tau(tau)?;
    let h = binary_entropy(tau)?;
    let mut best: Option<(f64, u32)> = None;
    for q in 1..=t {
        let p = model.p(q)?;
        if tau >= 1.0 - p {
            return Err(Error::param(format!(
                "tau = {tau} >= 1 - p({q}) = {}; the bound is vacuous",
                1.0 - p
            )));
        }
        let value = -(p.log2() + h + tau * ((1.0 - p) / p).log2()) / (2.0 * q as f64);
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, q));
        }
    }
    let (r_hat, argmin_q) = best.expect("t >= 1");
    Ok(RateEstimate {
        r_hat,
        argmin_q,
        tau,
        model: model.clone(),
    })
}

fn log2_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).log2()).sum()
}

/// `log2` of the union bound on the expected number of bad coalition pairs,
/// `sum_q q M^(2q) T C(n,T) (1-p)^T p^(n-T)` with `T = floor(tau n)`,
/// where `log2_m = log2 M`. The sum is empty for `T = 0`, giving `-inf`.
pub fn expected_bad_pairs_log2(
    n: u64,
    log2_m: f64,
    t: u32,
    tau: f64,
    model: &PModel,
) -> Result<f64> {
    if n == 0 || t == 0 {
        return Err(Error::param("n and t must be positive"));
    }
    if !(log2_m >= 0.0 && log2_m.is_finite()) {
        return Err(Error::param(format!("log2 M = {log2_m} must be finite and >= 0")));
    }
    check_tau(tau)?;
    let support = (tau * n as f64).floor() as u64;
    let ps = (1..=t).map(|q| model.p(q)).collect::<Result<Vec<_>>>()?;
    for (q, p) in (1..).zip(&ps) {
        if support as f64 > (1.0 - p) * n as f64 {
            return Err(Error::param(format!(
                "T = {support} exceeds (1 - p({q})) n = {}",
                (1.0 - p) * n as f64
            )));
        }
    }
    if support == 0 {
        return Ok(f64::NEG_INFINITY);
    }
    let common = (support as f64).log2() + log2_binomial(n, support);
    let exponents: Vec<f64> = (1..=t)
        .zip(&ps)
        .map(|(q, &p)| {
            (q as f64).log2()
                + 2.0 * q as f64 * log2_m
                + common
                + support as f64 * (1.0 - p).log2()
                + (n - support) as f64 * p.log2()
        })
        .collect();
    let top = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(top + exponents.iter().map(|a| (a - top).exp2()).sum::<f64>().log2())
}

/// A code found by rejection sampling and the number of draws it took.
#[derive(Clone, Debug, PartialEq)]
pub struct FoundCode {
    pub code: BinaryCode,
    pub attempts: u64,
}

const SEARCH_BATCH: u64 = 32;

/// Draws `random_code(n, m, seed ^ attempt)` for `attempt = 0, 1, ...` and
/// returns the first draw that is a Hamming `(t, T)` code.
///
/// Attempts run in parallel batches; the lowest successful attempt index
/// wins, so the result does not depend on scheduling.
pub fn find_code(
    n: usize,
    m: usize,
    t: usize,
    support: u64,
    max_attempts: u64,
    seed: u64,
) -> Result<Option<FoundCode>> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyCode { n, m });
    }
    if t == 0 || t > m {
        return Err(Error::param(format!("coalition bound t = {t} outside [1, M = {m}]")));
    }
    let mut start = 0;
    while start < max_attempts {
        let end = (start + SEARCH_BATCH).min(max_attempts);
        let hit = (start..end)
            .into_par_iter()
            .map(|attempt| -> Result<Option<FoundCode>> {
                let code = random_code(n, m, seed ^ attempt)?;
                let report = is_hamming_ltc(&code, t, support)?;
                Ok(report.holds.then_some(FoundCode {
                    code,
                    attempts: attempt + 1,
                }))
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        if let Some(found) = hit {
            return found;
        }
        start = end;
    }
    Ok(None)
}

/// One row of the bad-row probability table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BadRowRecord {
    pub q: u32,
    pub r: u32,
    pub k: u32,
    pub exact_num: String,
    pub exact_den: String,
    pub mc_freq: f64,
    pub mc_stderr: f64,
    pub trials: u64,
}

impl BadRowRecord {
    pub fn compute(q: u32, r: u32, k: u32, trials: u64, seed: u64) -> Result<Self> {
        let exact = exact_bad_row_prob(q, r, k)?;
        let mc = mc_bad_row_prob(q, r, k, trials, seed)?;
        Ok(BadRowRecord {
            q,
            r,
            k,
            exact_num: exact.numer().to_string(),
            exact_den: exact.denom().to_string(),
            mc_freq: mc.frequency,
            mc_stderr: mc.std_err,
            trials,
        })
    }
}

/// One row of the rate table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateRecord {
    pub t: u32,
    pub tau: f64,
    pub model: String,
    pub r_hat: f64,
    pub argmin_q: u32,
}

impl From<&RateEstimate> for RateRecord {
    fn from(e: &RateEstimate) -> Self {
        RateRecord {
            t: 0,
            tau: e.tau,
            model: e.model.name().to_string(),
            r_hat: e.r_hat,
            argmin_q: e.argmin_q,
        }
    }
}
