//! The watermarking pipeline: carriers, embedding, averaging forgery with
//! noise, and syndrome extraction.
//!
//! Noise is synthesized inside the span of the carriers, so its image in
//! the syndrome is exactly the sampled coefficient vector.

use std::fmt;
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// `n` orthonormal carrier vectors of length `dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct CarrierBasis {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl CarrierBasis {
    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n() {
            for j in i..self.n() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(&self.vectors[i], &self.vectors[j]) - target).abs());
            }
        }
        worst
    }

    /// `host + sum_k coeffs[k] * f_k`.
    pub fn combine(&self, host: &[f64], coeffs: &[f64]) -> Vec<f64> {
        let mut out = host.to_vec();
        for (f, &c) in self.vectors.iter().zip(coeffs) {
            if c != 0.0 {
                for (o, x) in out.iter_mut().zip(f) {
                    *o += c * x;
                }
            }
        }
        out
    }
}

/// Gaussian rows orthonormalized by modified Gram-Schmidt with one
/// re-orthogonalization pass.
pub fn make_carriers(n: usize, dim: usize, seed: u64) -> Result<CarrierBasis> {
    if n == 0 {
        return Err(Error::param("need at least one carrier"));
    }
    if dim < n {
        return Err(Error::Dimension(format!(
            "cannot fit {n} orthonormal carriers in dimension {dim}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n);
    while vectors.len() < n {
        let mut v = vec![0.0; dim];
        rng.fill_gaussian(&mut v);
        let start = norm(&v);
        for _pass in 0..2 {
            for f in &vectors {
                let c = dot(&v, f);
                for (x, y) in v.iter_mut().zip(f) {
                    *x -= c * y;
                }
            }
        }
        let len = norm(&v);
        // numerically degenerate draw: take another one
        if len.is_nan() || len <= 1e-8 * start {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= len);
        vectors.push(v);
    }
    Ok(CarrierBasis { dim, vectors })
}

/// Seeded Gaussian host signal of length `dim` with norm `100 * sqrt(n)`.
pub fn default_host(dim: usize, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    let mut x = vec![0.0; dim];
    rng.fill_gaussian(&mut x);
    let scale = 100.0 * (n as f64).sqrt() / norm(&x).max(f64::MIN_POSITIVE);
    x.iter_mut().for_each(|v| *v *= scale);
    x
}

fn check_dims(host: &[f64], carriers: &CarrierBasis, code: &BinaryCode) -> Result<()> {
    if host.len() != carriers.dim() {
        return Err(Error::Dimension(format!(
            "host has length {}, carriers have length {}",
            host.len(),
            carriers.dim()
        )));
    }
    if code.n() != carriers.n() {
        return Err(Error::Dimension(format!(
            "code has {} rows but there are {} carriers",
            code.n(),
            carriers.n()
        )));
    }
    Ok(())
}

/// The copy of user `user` (1-based): `host + sum_k h[k][user] f_k`.
pub fn embed(
    host: &[f64],
    carriers: &CarrierBasis,
    code: &BinaryCode,
    user: usize,
) -> Result<Vec<f64>> {
    check_dims(host, carriers, code)?;
    if user == 0 || user > code.m() {
        return Err(Error::IndexOutOfRange {
            index: user,
            m: code.m(),
        });
    }
    let coeffs: Vec<f64> = code.column(user - 1).into_iter().map(f64::from).collect();
    Ok(carriers.combine(host, &coeffs))
}

#[derive(Clone, Debug, PartialEq)]
pub enum NoiseKind {
    None,
    /// Uniform direction in the carrier span, norm `delta * u`, `u` in (0, 1].
    Ball { delta: f64 },
    /// `support` random carriers, each with a coefficient in
    /// `[-magnitude, magnitude]`.
    Sparse { support: usize, magnitude: f64 },
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseKind::None => f.write_str("none"),
            NoiseKind::Ball { delta } => write!(f, "ball:delta={delta}"),
            NoiseKind::Sparse { support, magnitude } => {
                write!(f, "sparse:T={support},mag={magnitude}")
            }
        }
    }
}

/// `none` | `ball:delta=<float>` | `sparse:T=<int>[,mag=<float>]`
impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse("noise description", s);
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let mut fields = Vec::new();
        if !args.is_empty() {
            for kv in args.split(',') {
                fields.push(kv.split_once('=').ok_or_else(bad)?);
            }
        }
        let noise = match kind {
            "none" if fields.is_empty() && !s.contains(':') => NoiseKind::None,
            "ball" => match fields.as_slice() {
                [("delta", d)] => NoiseKind::Ball {
                    delta: d.parse().map_err(|_| bad())?,
                },
                _ => return Err(bad()),
            },
            "sparse" => match fields.as_slice() {
                [("T", t)] => NoiseKind::Sparse {
                    support: t.parse().map_err(|_| bad())?,
                    magnitude: 1.0,
                },
                [("T", t), ("mag", m)] => NoiseKind::Sparse {
                    support: t.parse().map_err(|_| bad())?,
                    magnitude: m.parse().map_err(|_| bad())?,
                },
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        };
        noise.validate()?;
        Ok(noise)
    }
}

impl NoiseKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseKind::None => Ok(()),
            NoiseKind::Ball { delta } if !(delta >= 0.0 && delta.is_finite()) => {
                Err(Error::param(format!("ball radius {delta} must be finite and >= 0")))
            }
            NoiseKind::Sparse { magnitude, .. } if !(magnitude > 0.0 && magnitude.is_finite()) => {
                Err(Error::param(format!("sparse magnitude {magnitude} must be finite and > 0")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn none() -> Self {
        NoiseSpec {
            kind: NoiseKind::None,
            seed: 0,
        }
    }

    pub fn ball(delta: f64, seed: u64) -> Self {
        NoiseSpec {
            kind: NoiseKind::Ball { delta },
            seed,
        }
    }

    pub fn sparse(support: usize, magnitude: f64, seed: u64) -> Self {
        NoiseSpec {
            kind: NoiseKind::Sparse { support, magnitude },
            seed,
        }
    }

    /// Noise coefficients in the carrier basis, i.e. its syndrome image.
    pub fn sample(&self, n: usize) -> Result<Vec<f64>> {
        self.kind.validate()?;
        let mut rng = SplitMix64::new(self.seed);
        let mut e = vec![0.0; n];
        match self.kind {
            NoiseKind::None => {}
            NoiseKind::Ball { delta } => {
                if n == 0 || delta == 0.0 {
                    return Ok(e);
                }
                let len = loop {
                    rng.fill_gaussian(&mut e);
                    let len = norm(&e);
                    if len > 0.0 {
                        break len;
                    }
                };
                let radius = delta * rng.next_f64_open0();
                e.iter_mut().for_each(|x| *x *= radius / len);
            }
            NoiseKind::Sparse { support, magnitude } => {
                let support = if support > n {
                    warn!("sparse noise support {support} exceeds n = {n}; clamped to {n}");
                    n
                } else {
                    support
                };
                let mut idx: Vec<usize> = (0..n).collect();
                for i in 0..support {
                    let j = i + rng.below((n - i) as u64) as usize;
                    idx.swap(i, j);
                    e[idx[i]] = magnitude * (2.0 * rng.next_f64() - 1.0);
                }
            }
        }
        Ok(e)
    }
}

/// Averaging forgery: `host + |I|^-1 sum_{i in I} w_i + noise`.
pub fn forge(
    code: &BinaryCode,
    coalition: &Coalition,
    host: &[f64],
    carriers: &CarrierBasis,
    noise: &NoiseSpec,
) -> Result<Vec<f64>> {
    check_dims(host, carriers, code)?;
    coalition.check_range(code.m())?;
    let q = coalition.len() as f64;
    let mut coeffs = noise.sample(code.n())?;
    for (k, c) in coeffs.iter_mut().enumerate() {
        let ones: u32 = coalition
            .indices()
            .iter()
            .map(|&j| code.bit(k, j - 1) as u32)
            .sum();
        *c += ones as f64 / q;
    }
    Ok(carriers.combine(host, &coeffs))
}

/// Observed syndrome `s_k = <y - x, f_k>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SyndromeJson", into = "SyndromeJson")]
pub struct Syndrome {
    pub s: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SyndromeJson {
    n: usize,
    s: Vec<f64>,
}

impl TryFrom<SyndromeJson> for Syndrome {
    type Error = Error;
    fn try_from(j: SyndromeJson) -> Result<Self> {
        if j.n != j.s.len() {
            return Err(Error::Dimension(format!(
                "syndrome declares n = {} but has {} entries",
                j.n,
                j.s.len()
            )));
        }
        Ok(Syndrome { s: j.s })
    }
}

impl From<Syndrome> for SyndromeJson {
    fn from(s: Syndrome) -> Self {
        SyndromeJson {
            n: s.s.len(),
            s: s.s,
        }
    }
}

impl Syndrome {
    pub fn new(s: Vec<f64>) -> Self {
        Syndrome { s }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

pub fn extract_syndrome(y: &[f64], host: &[f64], carriers: &CarrierBasis) -> Result<Syndrome> {
    if y.len() != host.len() || host.len() != carriers.dim() {
        return Err(Error::Dimension(format!(
            "copy length {}, host length {}, carrier length {}",
            y.len(),
            host.len(),
            carriers.dim()
        )));
    }
    let diff: Vec<f64> = y.iter().zip(host).map(|(a, b)| a - b).collect();
    Ok(Syndrome {
        s: carriers.vectors.iter().map(|f| dot(&diff, f)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::average_signature;

    fn setup(seed: u64) -> (BinaryCode, CarrierBasis, Vec<f64>) {
        let code = crate::construct::random_code(6, 5, seed).unwrap();
        let carriers = make_carriers(6, 20, seed + 1).unwrap();
        let host = default_host(20, 6, seed + 2);
        (code, carriers, host)
    }

    #[test]
    fn carriers_are_orthonormal() {
        let b = make_carriers(4, 4, 7).unwrap();
        assert!(b.orthonormality_error() < 1e-10);
        let b = make_carriers(1, 3, 11).unwrap();
        assert!((norm(b.vector(0)) - 1.0).abs() < 1e-12);
        let b = make_carriers(40, 64, 2).unwrap();
        assert!(b.orthonormality_error() < 1e-10);
        assert!(make_carriers(3, 2, 0).is_err());
        assert_eq!(make_carriers(5, 9, 3).unwrap(), make_carriers(5, 9, 3).unwrap());
    }

    #[test]
    fn host_norm() {
        let x = default_host(50, 9, 4);
        assert!((norm(&x) - 300.0).abs() < 1e-9);
    }

    #[test]
    fn embedding() {
        let code = BinaryCode::from_columns(&[[0, 0, 0], [0, 1, 0]]).unwrap();
        let carriers = make_carriers(3, 5, 1).unwrap();
        let host = default_host(5, 3, 2);
        assert_eq!(embed(&host, &carriers, &code, 1).unwrap(), host);
        let zero = vec![0.0; 5];
        let y = embed(&zero, &carriers, &code, 2).unwrap();
        for (a, b) in y.iter().zip(carriers.vector(1)) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(embed(&host, &carriers, &code, 3).is_err());
        assert!(embed(&host[..4], &carriers, &code, 1).is_err());
    }

    #[test]
    fn embedded_bits_are_recovered() {
        let (code, carriers, host) = setup(3);
        for user in 1..=code.m() {
            let y = embed(&host, &carriers, &code, user).unwrap();
            let s = extract_syndrome(&y, &host, &carriers).unwrap();
            for k in 0..code.n() {
                assert!((s.s[k] - code.bit(k, user - 1) as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn noiseless_forgery_gives_signature() {
        let (code, carriers, host) = setup(5);
        let coalition = Coalition::new(vec![1, 3, 4]).unwrap();
        let y = forge(&code, &coalition, &host, &carriers, &NoiseSpec::none()).unwrap();
        let s = extract_syndrome(&y, &host, &carriers).unwrap();
        let sig = average_signature(&code, &coalition).unwrap().to_f64();
        for (a, b) in s.s.iter().zip(&sig) {
            assert!((a - b).abs() < 1e-9);
        }
        let single = Coalition::singleton(2).unwrap();
        let y = forge(&code, &single, &host, &carriers, &NoiseSpec::none()).unwrap();
        let y2 = embed(&host, &carriers, &code, 2).unwrap();
        for (a, b) in y.iter().zip(&y2) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_noise_stays_in_ball() {
        let (code, carriers, host) = setup(8);
        let coalition = Coalition::new(vec![2, 5]).unwrap();
        let sig = average_signature(&code, &coalition).unwrap().to_f64();
        for seed in 0..50 {
            let noise = NoiseSpec::ball(0.3, seed);
            let y = forge(&code, &coalition, &host, &carriers, &noise).unwrap();
            let s = extract_syndrome(&y, &host, &carriers).unwrap();
            let d: f64 = s.s.iter().zip(&sig).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            assert!(d <= 0.3 + 1e-9, "distance {d}");
        }
    }

    #[test]
    fn sparse_noise_support() {
        for seed in 0..50 {
            let e = NoiseSpec::sparse(2, 1.0, seed).sample(6).unwrap();
            assert!(e.iter().filter(|x| **x != 0.0).count() <= 2);
            assert!(e.iter().all(|x| x.abs() <= 1.0));
        }
        // clamped to n
        let e = NoiseSpec::sparse(10, 1.0, 1).sample(3).unwrap();
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn noise_grammar() {
        assert_eq!("none".parse::<NoiseKind>().unwrap(), NoiseKind::None);
        assert_eq!(
            "ball:delta=0.25".parse::<NoiseKind>().unwrap(),
            NoiseKind::Ball { delta: 0.25 }
        );
        assert_eq!(
            "sparse:T=3".parse::<NoiseKind>().unwrap(),
            NoiseKind::Sparse { support: 3, magnitude: 1.0 }
        );
        assert_eq!(
            "sparse:T=3,mag=2.5".parse::<NoiseKind>().unwrap(),
            NoiseKind::Sparse { support: 3, magnitude: 2.5 }
        );
        for bad in ["", "none:", "ball", "ball:delta=-1", "ball:r=1", "sparse:T=x", "sparse:mag=1,T=2", "sparse:T=1,mag=0", "gauss"] {
            assert!(bad.parse::<NoiseKind>().is_err(), "{bad:?}");
        }
        let k = NoiseKind::Sparse { support: 2, magnitude: 0.5 };
        assert_eq!(k.to_string().parse::<NoiseKind>().unwrap(), k);
    }

    #[test]
    fn syndrome_json() {
        let s = Syndrome::new(vec![0.5, 1.0]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"n":2,"s":[0.5,1.0]}"#);
        assert_eq!(serde_json::from_str::<Syndrome>(&text).unwrap(), s);
        assert!(serde_json::from_str::<Syndrome>(r#"{"n":3,"s":[0.5]}"#).is_err());
    }

    #[test]
    fn extraction_dims() {
        let carriers = make_carriers(2, 3, 0).unwrap();
        assert!(extract_syndrome(&[0.0; 3], &[0.0; 2], &carriers).is_err());
        let s = extract_syndrome(&[1.0; 3], &[1.0; 3], &carriers).unwrap();
        assert_eq!(s.s, vec![0.0, 0.0]);
    }
}
