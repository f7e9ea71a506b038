//! Text formats and the seeded instance generator.
//!
//! Instance files hold one decimal value per line. `#` starts a comment and
//! blank lines are ignored. A value is an optional `-`, one or more digits and
//! optionally a `.` followed by one or more fractional digits. All values of a
//! file are rescaled to the largest number of fractional digits present.
//!
//! Partition files list the side-1 indices, one per line, counting from 1.
//!
//! Report documents are JSON objects with a fixed field order; indices in
//! them count from 1 as well.

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::baselines::BaselineReport;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::OracleResult;
use crate::solver::{SolverConfig, SolverReport};
use crate::value::Value;

fn content(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

struct Token {
    negative: bool,
    digits: String,
    frac_len: u32,
}

fn parse_token(tok: &str) -> Option<Token> {
    let (negative, rest) = match tok.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, tok),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (rest, None),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !frac_part.is_none_or(all_digits) {
        return None;
    }
    let frac = frac_part.unwrap_or("");
    Some(Token {
        negative,
        digits: format!("{int_part}{frac}"),
        frac_len: u32::try_from(frac.len()).ok()?,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut tokens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = content(line);
        if body.is_empty() {
            continue;
        }
        let tok = parse_token(body).ok_or_else(|| Error::Parse {
            line: lineno + 1,
            msg: format!("expected a decimal number, found {body:?}"),
        })?;
        tokens.push(tok);
    }
    let scale_exp = tokens.iter().map(|t| t.frac_len).max().unwrap_or(0);
    let values = tokens
        .into_iter()
        .map(|t| {
            let mag: BigInt = t.digits.parse().expect("validated digits");
            let v = Value::from_bigint(if t.negative { -mag } else { mag });
            v.scale_up(scale_exp - t.frac_len)
        })
        .collect();
    Ok(Instance::new(values).with_scale_exp(scale_exp))
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    for v in &instance.values {
        out.push_str(&instance.render(v));
        out.push('\n');
    }
    out
}

/// Reads a partition file into zero-based side-1 indices.
pub fn parse_partition(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = content(line);
        if body.is_empty() {
            continue;
        }
        let idx: usize = body.parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            msg: format!("expected a positive index, found {body:?}"),
        })?;
        if idx == 0 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "indices start at 1".into(),
            });
        }
        out.push(idx - 1);
    }
    Ok(out)
}

pub fn write_partition(side1: &[usize]) -> String {
    side1.iter().map(|i| format!("{}\n", i + 1)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    /// Integers drawn uniformly from `lo..=hi`.
    UniformInt { lo: i64, hi: i64 },
    /// Magnitudes drawn uniformly from `0..2^max_bits`.
    Pow2Magnitudes { max_bits: u32 },
    /// Decimals with the given digit counts, uniform over the digit strings.
    Decimal { digits_before: u32, digits_after: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SignMode {
    Positive,
    /// Each value is negated with this probability.
    Mixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub distribution: Distribution,
    pub sign_mode: SignMode,
    pub zero_rate: f64,
    pub seed: u64,
}

impl std::str::FromStr for Distribution {
    type Err = Error;

    /// `uniform:LO:HI`, `pow2:BITS` or `decimal:BEFORE:AFTER`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("unrecognized distribution {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["uniform", lo, hi] => Ok(Distribution::UniformInt {
                lo: lo.parse().map_err(|_| bad())?,
                hi: hi.parse().map_err(|_| bad())?,
            }),
            ["pow2", bits] => Ok(Distribution::Pow2Magnitudes {
                max_bits: bits.parse().map_err(|_| bad())?,
            }),
            ["decimal", before, after] => Ok(Distribution::Decimal {
                digits_before: before.parse().map_err(|_| bad())?,
                digits_after: after.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl std::str::FromStr for SignMode {
    type Err = Error;

    /// `positive` or `mixed:FRACTION`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "positive" => Ok(SignMode::Positive),
            Some(("mixed", p)) => p
                .parse()
                .map(SignMode::Mixed)
                .map_err(|_| Error::InvalidSpec(format!("bad negative fraction {p:?}"))),
            _ => Err(Error::InvalidSpec(format!("unrecognized sign mode {s:?}"))),
        }
    }
}

const MAX_BITS: u32 = 1 << 16;

impl GenSpec {
    pub fn uniform(n: usize, lo: i64, hi: i64, seed: u64) -> Self {
        GenSpec {
            n,
            distribution: Distribution::UniformInt { lo, hi },
            sign_mode: SignMode::Positive,
            zero_rate: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fraction = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("{name} must lie in [0, 1], got {p}")))
            }
        };
        fraction("zero rate", self.zero_rate)?;
        if let SignMode::Mixed(p) = self.sign_mode {
            fraction("negative fraction", p)?;
        }
        match self.distribution {
            Distribution::UniformInt { lo, hi } if lo > hi => {
                Err(Error::InvalidSpec(format!("empty range {lo}..={hi}")))
            }
            Distribution::Pow2Magnitudes { max_bits } if max_bits == 0 || max_bits > MAX_BITS => {
                Err(Error::InvalidSpec(format!("max_bits must be in 1..={MAX_BITS}")))
            }
            Distribution::Decimal {
                digits_before,
                digits_after,
            } if !(1..=4096).contains(&digits_before.saturating_add(digits_after)) => {
                Err(Error::InvalidSpec("decimal needs 1 to 4096 digits".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Deterministic instance from a spec.
///
/// The stream comes from xoshiro256++ seeded through SplitMix64
/// (`Xoshiro256PlusPlus::seed_from_u64`). For every position the generator
/// draws, in order, the raw value, a zero test and a sign test, whatever the
/// outcomes, so the stream layout is independent of the values.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(spec.seed);
    let mut values = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let raw = match spec.distribution {
            Distribution::UniformInt { lo, hi } => Value::from(rng.gen_range(lo..=hi)),
            Distribution::Pow2Magnitudes { max_bits } => {
                let words = max_bits.div_ceil(32) as usize;
                let mut digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
                let spare = words as u32 * 32 - max_bits;
                if let Some(top) = digits.last_mut() {
                    *top >>= spare;
                }
                Value::from_bigint(BigInt::from(BigUint::new(digits)))
            }
            Distribution::Decimal {
                digits_before,
                digits_after,
            } => {
                let s: String = (0..digits_before + digits_after)
                    .map(|_| char::from(b'0' + rng.gen_range(0..10u8)))
                    .collect();
                Value::from_bigint(s.parse().expect("digit string"))
            }
        };
        let zero = rng.gen::<f64>() < spec.zero_rate;
        let negate = match spec.sign_mode {
            SignMode::Positive => {
                let _ = rng.gen::<f64>();
                false
            }
            SignMode::Mixed(p) => rng.gen::<f64>() < p,
        };
        values.push(if zero {
            Value::zero()
        } else if negate {
            -raw
        } else {
            raw
        });
    }
    let scale_exp = match spec.distribution {
        Distribution::Decimal { digits_after, .. } => digits_after,
        _ => 0,
    };
    Ok(Instance::new(values)
        .with_scale_exp(scale_exp)
        .with_id(format!("gen-{}", spec.seed)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub init: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tie: String,
    pub engine: String,
    pub trace: bool,
}

impl From<&SolverConfig> for ConfigEcho {
    fn from(c: &SolverConfig) -> Self {
        ConfigEcho {
            init: c.init_policy.name().into(),
            seed: c.init_policy.seed(),
            tie: c.tie_break.name().into(),
            engine: c.engine.name().into(),
            trace: c.collect_trace,
        }
    }
}

/// Serialized form of a solver, baseline or oracle result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub n: usize,
    pub method: String,
    pub final_diff: String,
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traverses: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swaps: Option<u64>,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff_trace: Option<Vec<String>>,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

impl ReportDocument {
    pub fn from_solver(instance: &Instance, report: &SolverReport, config: &SolverConfig) -> Self {
        ReportDocument {
            id: instance.id.clone(),
            n: instance.len(),
            method: "local_2opt".into(),
            final_diff: instance.render(&report.final_diff),
            side1: one_based(&report.side1_indices),
            side2: one_based(&report.side2_indices),
            traverses: Some(report.traverses),
            swaps: Some(report.swaps),
            elapsed_ms: report.elapsed.as_secs_f64() * 1e3,
            config: Some(config.into()),
            diff_trace: report
                .diff_trace
                .as_ref()
                .map(|t| t.iter().map(|d| instance.render(d)).collect()),
        }
    }

    pub fn from_baseline(instance: &Instance, report: &BaselineReport, elapsed_ms: f64) -> Self {
        ReportDocument {
            id: instance.id.clone(),
            n: instance.len(),
            method: report.method.to_string(),
            final_diff: instance.render(&report.final_diff),
            side1: one_based(&report.side1_indices),
            side2: one_based(&report.side2_indices),
            traverses: None,
            swaps: None,
            elapsed_ms,
            config: None,
            diff_trace: None,
        }
    }

    pub fn from_oracle(instance: &Instance, method: &str, result: &OracleResult, elapsed_ms: f64) -> Self {
        ReportDocument {
            id: instance.id.clone(),
            n: instance.len(),
            method: method.into(),
            final_diff: instance.render(&result.optimal_diff),
            side1: one_based(&result.witness_side1),
            side2: one_based(&result.witness_side2(instance.len())),
            traverses: None,
            swaps: None,
            elapsed_ms,
            config: None,
            diff_trace: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))
    }
}

pub fn serialize_report(instance: &Instance, report: &SolverReport, config: &SolverConfig) -> String {
    ReportDocument::from_solver(instance, report, config).to_json()
}
