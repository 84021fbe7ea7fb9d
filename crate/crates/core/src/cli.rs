//! The `fptrace` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, a trace is
//! ambiguous or a search is exhausted, 2 on usage, input or file errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::attack::{default_host, extract_syndrome, forge, make_carriers, NoiseKind, NoiseSpec, Syndrome};
use crate::code::BinaryCode;
use crate::construct::{
    bch_parity_matrix_with_poly, default_primitive_poly, delta_from_support, random_code,
    support_from_delta,
};
use crate::error::{Error, Result};
use crate::estimate::{
    admissible_triples, exact_bad_row_prob, expected_bad_pairs_log2, find_code, mc_bad_row_prob,
    rate_lower_bound, BadRowRecord, ModelKind, RateRecord,
};
use crate::rational::Rational;
use crate::rng::derive_seed;
use crate::trace::{trace_euclidean, trace_hamming};
use crate::verify::{check_2t_independence, is_euclidean_ltc, is_hamming_ltc};
use crate::Coalition;

/// Fully describes one invocation; equal configs produce equal output.
#[derive(Parser, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[command(
    name = "fptrace",
    version,
    about = "Fingerprinting codes against averaging attacks with adversarial noise",
    long_about = "Construct, verify, attack and trace binary fingerprinting codes. \
A code is an n x M binary matrix whose columns are user fingerprints; a coalition \
of at most t users averages its copies and may add noise."
)]
pub struct RunConfig {
    /// Base seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit RFC 4180 CSV where the command produces a table.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Command {
    /// Generate a code file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check a traceability property exhaustively.
    #[command(long_about = "Check a code exhaustively.\n\n\
hamming: the averaged signatures of any two distinct coalitions of size at most t \
differ in more than 2T coordinates, so noise on at most T coordinates cannot hide \
the coalition.\n\n\
euclidean: those signatures are more than 2*delta apart, so noise of norm at most \
delta cannot hide the coalition.\n\n\
independence: any 2t columns are linearly independent over the rationals, which \
makes the code completely traceable for coalitions of size at most t without noise.")]
    Verify(VerifyArgs),
    /// Forge a copy by averaging a coalition's copies, add noise, print the syndrome.
    #[command(long_about = "Embed the fingerprints of a coalition into a seeded host \
signal with n orthonormal carriers, average the copies, add noise inside the \
carrier span and print the syndrome <y - x, f_k> as JSON.\n\n\
Noise: none | ball:delta=<float> | sparse:T=<int>[,mag=<float>]")]
    Attack(AttackArgs),
    /// Recover the coalition from a syndrome by exhaustive search.
    #[command(long_about = "Score every coalition of size at most t against the \
syndrome. euclidean: smallest squared distance to the averaged signature. \
hamming: most coordinates within the matching tolerance. Ties for the best score \
are reported as ambiguous.")]
    Trace(TraceArgs),
    /// Bad-row probabilities and rate bounds for random codes.
    #[command(subcommand)]
    Estimate(EstimateCommand),
    /// Draw random codes until one is a Hamming (t, T) code.
    #[command(long_about = "Draw random codes with seeds seed^0, seed^1, ... and \
keep the first one whose averaged signatures for distinct coalitions of size at \
most t differ in more than 2T coordinates.")]
    Search(SearchArgs),
    /// Convert between Hamming and Euclidean noise parameters.
    #[command(long_about = "A Hamming (t, T) code is a Euclidean (t, delta) code for \
delta^2 = 2T / (2t(t-1))^2 (pass --t and --T). A Euclidean (t, delta) code is a \
Hamming (t, floor(2 delta^2)) code (pass --delta-sq).")]
    Convert(ConvertArgs),
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GenCommand {
    /// Uniform random code: every entry an independent fair bit.
    Random {
        #[arg(long)]
        n: usize,
        /// Number of columns (users).
        #[arg(long)]
        cols: usize,
    },
    /// Binary BCH parity-check matrix with designed distance 2t+1.
    #[command(long_about = "Binary expansion of the narrow-sense BCH parity-check \
matrix over GF(2^m) with designed distance 2t+1: t*m rows and 2^m - 1 columns, any \
2t of which are independent. Its rate log2(M+1)/n is exactly 1/t.")]
    Bch {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        t: u32,
        /// Primitive polynomial as a bitmask (decimal, 0x.. or 0b..).
        #[arg(long)]
        poly: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum VerifyMode {
    Hamming,
    Euclidean,
    Independence,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyMode::Hamming)]
    pub mode: VerifyMode,
    #[arg(long)]
    pub t: usize,
    /// Noise support bound (hamming).
    #[arg(long = "T")]
    pub support: Option<u64>,
    /// Squared noise radius as p/q (euclidean).
    #[arg(long)]
    pub delta_sq: Option<String>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Colluding users, 1-based, comma separated.
    #[arg(long)]
    pub coalition: String,
    #[arg(long, default_value = "none")]
    pub noise: String,
    /// Length of the host signal (default 2n).
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum MetricArg {
    Euclidean,
    Hamming,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Syndrome JSON as printed by `attack`.
    #[arg(long)]
    pub syndrome: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    pub metric: MetricArg,
    /// Matching tolerance for the hamming metric.
    #[arg(long)]
    pub match_tol: Option<f64>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EstimateCommand {
    /// Probability that a random row is bad for coalitions of sizes q >= r
    /// sharing k users.
    #[command(long_about = "Probability that a uniformly random row gives the same \
fraction of ones to coalitions of sizes q >= r that share k users. --exact sums \
the binomial terms exactly; --trials runs a seeded Monte Carlo estimate. With \
--max-q a table over all admissible (q, r, k) is produced.")]
    BadRow {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        trials: Option<u64>,
        /// Tabulate every admissible triple with q <= max-q.
        #[arg(long)]
        max_q: Option<u32>,
    },
    /// Achievable rate min_q -(log2 p + h(tau) + tau log2((1-p)/p)) / (2q).
    #[command(long_about = "Rate below which the expected number of bad coalition \
pairs in a random code vanishes, for noise on a tau fraction of coordinates: \
min over q in [1, t] of -(log2 p(q) + h(tau) + tau log2((1-p(q))/p(q))) / (2q). \
--t and --tau accept comma-separated lists.")]
    Rate {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        tau: Vec<f64>,
        #[arg(long, default_value = "conservative")]
        model: String,
    },
    /// log2 of the union bound on the expected number of bad coalition pairs.
    Expectation {
        #[arg(long)]
        n: u64,
        /// Number of columns.
        #[arg(long, conflicts_with = "log2_cols")]
        cols: Option<u64>,
        /// log2 of the number of columns, for sizes beyond u64.
        #[arg(long)]
        log2_cols: Option<f64>,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        #[arg(long, default_value = "conservative")]
        model: String,
    },
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub cols: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long = "T")]
    pub support: u64,
    #[arg(long, default_value_t = 1000)]
    pub max_attempts: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvertArgs {
    #[arg(long, requires = "support")]
    pub t: Option<u64>,
    #[arg(long = "T", requires = "t")]
    pub support: Option<u64>,
    #[arg(long, conflicts_with_all = ["t", "support"])]
    pub delta_sq: Option<String>,
}

enum Outcome {
    Success,
    Negative,
}

const DEFAULT_TRIALS: u64 = 100_000;

/// Run with explicit arguments (including the program name) and streams.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&config, stdout, stderr) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Negative) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn execute(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        if n == 0 {
            return Err(Error::param("--threads must be at least 1"));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::param(format!("cannot start worker pool: {e}")))?;

    let mut buffer = Vec::new();
    let mut diagnostics = Vec::new();
    let outcome = pool.install(|| dispatch(config, &mut buffer, &mut diagnostics));
    let _ = stderr.write_all(&diagnostics);
    let outcome = outcome?;
    match &config.out {
        Some(path) => fs::write(path, &buffer).map_err(|source| io_err(path, source))?,
        None => stdout
            .write_all(&buffer)
            .map_err(|source| io_err(Path::new("<stdout>"), source))?,
    }
    Ok(outcome)
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn emit(out: &mut Vec<u8>, text: impl AsRef<str>) {
    out.extend_from_slice(text.as_ref().as_bytes());
}

fn emit_json(out: &mut Vec<u8>, value: &serde_json::Value) {
    emit(out, serde_json::to_string_pretty(value).expect("serializable"));
    out.push(b'\n');
}

fn emit_csv<R: Serialize>(out: &mut Vec<u8>, records: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)
            .map_err(|e| Error::param(format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::param(format!("csv: {e}")))?;
    out.extend_from_slice(&bytes);
    Ok(())
}

fn parse_poly(s: &str) -> Result<u32> {
    let bad = || Error::parse("polynomial bitmask", s);
    if let Some(hex) = s.strip_prefix("0x") {
        u32::from_str_radix(hex, 16).map_err(|_| bad())
    } else if let Some(bin) = s.strip_prefix("0b") {
        u32::from_str_radix(bin, 2).map_err(|_| bad())
    } else {
        s.parse().map_err(|_| bad())
    }
}

fn dispatch(config: &RunConfig, out: &mut Vec<u8>, stderr: &mut dyn Write) -> Result<Outcome> {
    let seed = config.seed;
    match &config.command {
        Command::Gen(GenCommand::Random { n, cols }) => {
            emit(out, random_code(*n, *cols, seed)?.to_text());
            Ok(Outcome::Success)
        }
        Command::Gen(GenCommand::Bch { m, t, poly }) => {
            let poly = match poly {
                Some(p) => parse_poly(p)?,
                None => default_primitive_poly(*m)
                    .ok_or_else(|| Error::param(format!("field degree m = {m} outside [2, 16]")))?,
            };
            emit(out, bch_parity_matrix_with_poly(*m, *t, poly)?.to_text());
            Ok(Outcome::Success)
        }
        Command::Verify(args) => verify(args, out),
        Command::Attack(args) => attack(args, seed, out),
        Command::Trace(args) => trace(args, out),
        Command::Estimate(cmd) => estimate(cmd, config, out),
        Command::Search(args) => {
            let found = find_code(args.n, args.cols, args.t, args.support, args.max_attempts, seed)?;
            match found {
                Some(found) => {
                    let _ = writeln!(stderr, "found after {} attempts", found.attempts);
                    emit(out, found.code.to_text());
                    Ok(Outcome::Success)
                }
                None => {
                    let _ = writeln!(stderr, "no code found in {} attempts", args.max_attempts);
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::Convert(args) => convert(args, config.json, out),
    }
}

fn verify(args: &VerifyArgs, out: &mut Vec<u8>) -> Result<Outcome> {
    let code = BinaryCode::load(&args.code)?;
    let report = match args.mode {
        VerifyMode::Hamming => {
            let support = args
                .support
                .ok_or_else(|| Error::param("--mode hamming needs --T"))?;
            is_hamming_ltc(&code, args.t, support)?
        }
        VerifyMode::Euclidean => {
            let delta_sq: Rational = args
                .delta_sq
                .as_deref()
                .ok_or_else(|| Error::param("--mode euclidean needs --delta-sq"))?
                .parse()?;
            is_euclidean_ltc(&code, args.t, &delta_sq)?
        }
        VerifyMode::Independence => check_2t_independence(&code, args.t)?,
    };
    emit_json(out, &report.to_json());
    Ok(if report.holds {
        Outcome::Success
    } else {
        Outcome::Negative
    })
}

fn attack(args: &AttackArgs, seed: u64, out: &mut Vec<u8>) -> Result<Outcome> {
    let code = BinaryCode::load(&args.code)?;
    let coalition: Coalition = args.coalition.parse()?;
    let kind: NoiseKind = args.noise.parse()?;
    let dim = args.dim.unwrap_or(2 * code.n());
    let carriers = make_carriers(code.n(), dim, derive_seed(seed, 0))?;
    let host = default_host(dim, code.n(), derive_seed(seed, 1));
    let noise = NoiseSpec {
        kind,
        seed: derive_seed(seed, 2),
    };
    let y = forge(&code, &coalition, &host, &carriers, &noise)?;
    let syndrome = extract_syndrome(&y, &host, &carriers)?;
    emit(out, serde_json::to_string(&syndrome).expect("serializable"));
    out.push(b'\n');
    Ok(Outcome::Success)
}

fn trace(args: &TraceArgs, out: &mut Vec<u8>) -> Result<Outcome> {
    let code = BinaryCode::load(&args.code)?;
    let text = fs::read_to_string(&args.syndrome).map_err(|e| io_err(&args.syndrome, e))?;
    let syndrome: Syndrome = serde_json::from_str(&text)
        .map_err(|e| Error::param(format!("{}: {e}", args.syndrome.display())))?;
    let result = match args.metric {
        MetricArg::Euclidean => trace_euclidean(&code, &syndrome, args.t)?,
        MetricArg::Hamming => trace_hamming(&code, &syndrome, args.t, args.match_tol)?,
    };
    emit_json(out, &result.to_json());
    Ok(if result.ambiguous {
        Outcome::Negative
    } else {
        Outcome::Success
    })
}

fn estimate(cmd: &EstimateCommand, config: &RunConfig, out: &mut Vec<u8>) -> Result<Outcome> {
    match cmd {
        EstimateCommand::BadRow {
            q,
            r,
            k,
            exact,
            trials,
            max_q,
        } => {
            let triples = match (max_q, q, r, k) {
                (Some(max_q), _, _, _) => admissible_triples(*max_q),
                (None, Some(q), Some(r), Some(k)) => vec![(*q, *r, *k)],
                _ => return Err(Error::param("pass --q, --r and --k, or --max-q")),
            };
            let want_exact = *exact || trials.is_none();
            let want_mc = trials.is_some() || !*exact;
            let trials = trials.unwrap_or(DEFAULT_TRIALS);

            if config.csv {
                let records = triples
                    .iter()
                    .enumerate()
                    .map(|(i, &(q, r, k))| {
                        BadRowRecord::compute(q, r, k, trials, derive_seed(config.seed, i as u64))
                    })
                    .collect::<Result<Vec<_>>>()?;
                emit_csv(out, &records)?;
                return Ok(Outcome::Success);
            }
            let mut rows = Vec::new();
            for (i, &(q, r, k)) in triples.iter().enumerate() {
                let exact = want_exact.then(|| exact_bad_row_prob(q, r, k)).transpose()?;
                let mc = want_mc
                    .then(|| mc_bad_row_prob(q, r, k, trials, derive_seed(config.seed, i as u64)))
                    .transpose()?;
                rows.push((q, r, k, exact, mc));
            }
            if config.json {
                let items: Vec<_> = rows
                    .iter()
                    .map(|(q, r, k, exact, mc)| {
                        json!({
                            "q": q, "r": r, "k": k,
                            "exact": exact.as_ref().map(|e| e.to_string()),
                            "mc_freq": mc.map(|m| m.frequency),
                            "mc_stderr": mc.map(|m| m.std_err),
                            "trials": mc.map(|m| m.trials),
                        })
                    })
                    .collect();
                let value = if items.len() == 1 {
                    items.into_iter().next().unwrap()
                } else {
                    json!(items)
                };
                emit_json(out, &value);
            } else {
                let single = rows.len() == 1;
                for (q, r, k, exact, mc) in rows {
                    let mut fields = Vec::new();
                    if !single {
                        fields.push(format!("q={q} r={r} k={k}"));
                    }
                    if let Some(e) = exact {
                        fields.push(e.to_string());
                    }
                    if let Some(m) = mc {
                        fields.push(format!("mc={} stderr={} trials={}", m.frequency, m.std_err, m.trials));
                    }
                    emit(out, fields.join(" "));
                    out.push(b'\n');
                }
            }
            Ok(Outcome::Success)
        }
        EstimateCommand::Rate { t, tau, model } => {
            let kind: ModelKind = model.parse()?;
            let mut records = Vec::new();
            for &t in t {
                let model = kind.build(t)?;
                for &tau in tau {
                    let est = rate_lower_bound(t, tau, &model)?;
                    records.push(RateRecord {
                        t,
                        ..RateRecord::from(&est)
                    });
                }
            }
            if config.csv {
                emit_csv(out, &records)?;
            } else if config.json {
                emit_json(out, &serde_json::to_value(&records).expect("serializable"));
            } else {
                for r in &records {
                    emit(
                        out,
                        format!(
                            "t={} tau={} model={} r_hat={} argmin_q={}\n",
                            r.t, r.tau, r.model, r.r_hat, r.argmin_q
                        ),
                    );
                }
            }
            Ok(Outcome::Success)
        }
        EstimateCommand::Expectation {
            n,
            cols,
            log2_cols,
            t,
            tau,
            model,
        } => {
            let log2_m = match (cols, log2_cols) {
                (Some(m), None) if *m >= 1 => (*m as f64).log2(),
                (None, Some(l)) => *l,
                _ => return Err(Error::param("pass --cols (>= 1) or --log2-cols")),
            };
            let model = model.parse::<ModelKind>()?.build(*t)?;
            let value = expected_bad_pairs_log2(*n, log2_m, *t, *tau, &model)?;
            if config.json {
                let v = if value.is_finite() { json!(value) } else { serde_json::Value::Null };
                emit_json(out, &json!({ "n": n, "log2_cols": log2_m, "t": t, "tau": tau,
                    "model": model.name(), "log2_expected_bad_pairs": v }));
            } else {
                emit(out, format!("log2_expected_bad_pairs = {value}\n"));
            }
            Ok(Outcome::Success)
        }
    }
}

fn convert(args: &ConvertArgs, as_json: bool, out: &mut Vec<u8>) -> Result<Outcome> {
    match (args.t, args.support, &args.delta_sq) {
        (Some(t), Some(support), None) => {
            let conv = delta_from_support(t, support)?;
            if as_json {
                emit_json(out, &json!({
                    "t": conv.t,
                    "T": conv.support,
                    "delta_sq": conv.delta_sq.to_string(),
                    "delta": conv.delta_sq.to_f64().sqrt(),
                }));
            } else {
                emit(out, format!("delta_sq = {}\n", conv.delta_sq));
            }
        }
        (None, None, Some(delta_sq)) => {
            let delta_sq: Rational = delta_sq.parse()?;
            let support = support_from_delta(&delta_sq)?;
            if as_json {
                emit_json(out, &json!({ "delta_sq": delta_sq.to_string(), "T": support }));
            } else {
                emit(out, format!("T = {support}\n"));
            }
        }
        _ => return Err(Error::param("pass --t and --T, or --delta-sq")),
    }
    Ok(Outcome::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("fptrace").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bad_row_exact() {
        let (code, out, _) = run_str(&["estimate", "bad-row", "--q", "2", "--r", "2", "--k", "0", "--exact"]);
        assert_eq!(code, 0);
        assert_eq!(out, "3/8\n");
    }

    #[test]
    fn convert_both_ways() {
        assert_eq!(run_str(&["convert", "--t", "2", "--T", "1"]).1, "delta_sq = 1/8\n");
        assert_eq!(run_str(&["convert", "--delta-sq", "9/4"]).1, "T = 4\n");
        assert_eq!(run_str(&["convert", "--t", "1", "--T", "1"]).0, 2);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["convert", "--t", "x", "--T", "1"]).0, 2);
        assert_eq!(run_str(&["verify", "--code", "/nonexistent", "--t", "1", "--T", "0"]).0, 2);
        let (code, out, err) = run_str(&["estimate", "bad-row"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_str(&["verify", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("2T coordinates"));
    }

    #[test]
    fn config_serializes() {
        let c = RunConfig::try_parse_from(["fptrace", "--seed", "4", "convert", "--t", "2", "--T", "1"]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn poly_formats() {
        assert_eq!(parse_poly("0b1011").unwrap(), 11);
        assert_eq!(parse_poly("0x13").unwrap(), 19);
        assert_eq!(parse_poly("19").unwrap(), 19);
        assert!(parse_poly("zz").is_err());
    }
}
