//! Exhaustive coalition decoders.
//!
//! Every coalition of size at most `t` is scored against the syndrome; the
//! best one wins, ties going to the earlier coalition in canonical order. A
//! tie for the best score is reported as ambiguous rather than resolved.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::attack::Syndrome;
use crate::coalition::{all_coalitions, Coalition};
use crate::code::BinaryCode;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Hamming,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Hamming => "hamming",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceResult {
    pub coalition: Coalition,
    /// Squared distance (Euclidean) or number of matching coordinates (Hamming).
    pub score: f64,
    pub runner_up: Option<(Coalition, f64)>,
    /// `|score - runner_up score|`, infinite without a runner-up.
    pub margin: f64,
    pub ambiguous: bool,
    pub metric: Metric,
    pub candidates: u64,
}

impl TraceResult {
    pub fn to_json(&self) -> Value {
        json!({
            "coalition": self.coalition.indices(),
            "score": self.score,
            "runner_up": self.runner_up.as_ref().map(|(c, score)| json!({
                "coalition": c.indices(),
                "score": score,
            })),
            "margin": if self.margin.is_finite() { json!(self.margin) } else { Value::Null },
            "ambiguous": self.ambiguous,
            "metric": self.metric.name(),
            "candidates": self.candidates,
        })
    }
}

fn check_inputs(code: &BinaryCode, s: &Syndrome, t: usize) -> Result<()> {
    if t == 0 || t > code.m() {
        return Err(Error::param(format!(
            "coalition bound t = {t} outside [1, M = {}]",
            code.m()
        )));
    }
    if s.len() != code.n() {
        return Err(Error::Dimension(format!(
            "syndrome has length {} but the code has {} rows",
            s.len(),
            code.n()
        )));
    }
    Ok(())
}

/// Column sums of `coalition` per row.
fn counts<'a>(code: &'a BinaryCode, coalition: &Coalition) -> impl Iterator<Item = u32> + 'a {
    let cols: Vec<usize> = coalition.indices().iter().map(|j| j - 1).collect();
    (0..code.n()).map(move |k| {
        let row = code.row(k);
        cols.iter().map(|&j| row[j] as u32).sum()
    })
}

/// Scores every candidate and picks the best by `key` (smaller is better).
fn decode<F>(code: &BinaryCode, t: usize, metric: Metric, score: F) -> TraceResult
where
    F: Fn(&Coalition) -> f64 + Sync,
{
    let candidates = all_coalitions(code.m(), t);
    let scores: Vec<f64> = candidates.par_iter().map(&score).collect();
    let key = |x: f64| match metric {
        Metric::Euclidean => x,
        Metric::Hamming => -x,
    };
    let best_of = |skip: Option<usize>| {
        let mut best: Option<usize> = None;
        for (i, &s) in scores.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            if best.is_none_or(|b| key(s) < key(scores[b])) {
                best = Some(i);
            }
        }
        best
    };
    let best = best_of(None).expect("at least one candidate");
    let runner = best_of(Some(best));
    let ambiguous = runner.is_some_and(|r| scores[r] == scores[best]);
    TraceResult {
        coalition: candidates[best].clone(),
        score: scores[best],
        runner_up: runner.map(|r| (candidates[r].clone(), scores[r])),
        margin: runner.map_or(f64::INFINITY, |r| (scores[best] - scores[r]).abs()),
        ambiguous,
        metric,
        candidates: candidates.len() as u64,
    }
}

/// Nearest signature in Euclidean distance.
pub fn trace_euclidean(code: &BinaryCode, s: &Syndrome, t: usize) -> Result<TraceResult> {
    check_inputs(code, s, t)?;
    Ok(decode(code, t, Metric::Euclidean, |c| {
        let q = c.len() as f64;
        counts(code, c)
            .zip(&s.s)
            .map(|(cnt, &x)| (x - cnt as f64 / q).powi(2))
            .sum()
    }))
}

/// Default matching tolerance: a quarter of the smallest possible gap
/// `1 / (t(t-1))` between distinct signature values.
pub fn default_match_tol(t: usize) -> f64 {
    1.0 / (4.0 * (t * t.saturating_sub(1)).max(1) as f64)
}

/// Half of the smallest gap between distinct signature values; tolerances
/// at or above it could match two different candidates.
pub fn half_gap(t: usize) -> f64 {
    1.0 / (2.0 * (t * t.saturating_sub(1)).max(1) as f64)
}

/// Signature agreeing with the syndrome in the most coordinates, where a
/// coordinate agrees when it is within `match_tol`.
pub fn trace_hamming(
    code: &BinaryCode,
    s: &Syndrome,
    t: usize,
    match_tol: Option<f64>,
) -> Result<TraceResult> {
    check_inputs(code, s, t)?;
    let tol = match_tol.unwrap_or_else(|| default_match_tol(t));
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::param(format!("match tolerance {tol} must be positive")));
    }
    if tol >= half_gap(t) {
        return Err(Error::param(format!(
            "match tolerance {tol} must be below half the minimum signature gap, {}",
            half_gap(t)
        )));
    }
    Ok(decode(code, t, Metric::Hamming, |c| {
        let q = c.len() as f64;
        counts(code, c)
            .zip(&s.s)
            .filter(|(cnt, &x)| (x - *cnt as f64 / q).abs() <= tol)
            .count() as f64
    }))
}
