//! Monte Carlo sweeps over erasure probabilities.
//!
//! Every trial draws one sample from its own stream and hands the same sample
//! to every decoder, so decoder comparisons are paired. Counts are summed in
//! a fixed order, which keeps results independent of the worker count.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::channel::{sample, ErasureSample, RngStream};
use crate::classical::{load_alist, peg_generate, PegParams, TannerGraph};
use crate::error::{Error, Result};
use crate::hgp::HgpCode;
use crate::ml::{classify_residual, ml_decode, Verdict};
use crate::peeling::{peel_quantum, pruned_peel, DecodeOutcome, PruneConfig};
use crate::vh::{combined_decode, vh_decode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoderKind {
    Peeling,
    Pruned(usize),
    Vh,
    Combined(usize),
    Ml,
}

impl DecoderKind {
    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Runs the decoder on a sample.
    pub fn decode(&self, code: &HgpCode, s: &ErasureSample) -> Result<DecodeOutcome> {
        match *self {
            DecoderKind::Peeling => peel_quantum(code, &s.erasure, &s.syndrome),
            DecoderKind::Pruned(m) => pruned_peel(code, &s.erasure, &s.syndrome, PruneConfig::new(m)),
            DecoderKind::Vh => vh_decode(code, &s.erasure, &s.syndrome),
            DecoderKind::Combined(m) => {
                combined_decode(code, &s.erasure, &s.syndrome, PruneConfig::new(m))
            }
            DecoderKind::Ml => {
                let correction = ml_decode(code, &s.erasure, &s.syndrome)?;
                Ok(DecodeOutcome {
                    status: crate::peeling::DecodeStatus::Corrected,
                    residual_erasure: crate::gf2::BinaryVector::zeros(correction.len()),
                    correction,
                    stats: Default::default(),
                })
            }
        }
    }

    /// Decodes and scores a sample.
    pub fn verdict(&self, code: &HgpCode, s: &ErasureSample) -> Result<Verdict> {
        let out = self.decode(code, s)?;
        if !out.is_corrected() {
            return Ok(Verdict::Abort);
        }
        Ok(classify_residual(code, &out.correction, &s.error, &self.label())?.verdict)
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderKind::Peeling => write!(f, "peeling"),
            DecoderKind::Pruned(m) => write!(f, "pruned:{m}"),
            DecoderKind::Vh => write!(f, "vh"),
            DecoderKind::Combined(m) => write!(f, "combined:{m}"),
            DecoderKind::Ml => write!(f, "ml"),
        }
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let m = |default: usize| -> Result<usize> {
            arg.map_or(Ok(default), |a| {
                a.parse()
                    .map_err(|_| Error::InvalidParams(format!("invalid prune depth in {s:?}")))
            })
        };
        let no_arg = |k: DecoderKind| match arg {
            None => Ok(k),
            Some(_) => Err(Error::InvalidParams(format!("decoder {name:?} takes no argument"))),
        };
        match name {
            "peeling" => no_arg(DecoderKind::Peeling),
            "pruned" => Ok(DecoderKind::Pruned(m(1)?)),
            "vh" => no_arg(DecoderKind::Vh),
            "combined" => Ok(DecoderKind::Combined(m(1)?)),
            "ml" => no_arg(DecoderKind::Ml),
            _ => Err(Error::InvalidParams(format!("unknown decoder {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CodeSource {
    Alist(PathBuf),
    Peg(PegParams),
    Graph(TannerGraph),
}

impl CodeSource {
    pub fn load(&self) -> Result<HgpCode> {
        let g = match self {
            CodeSource::Alist(path) => load_alist(path)?,
            CodeSource::Peg(p) => peg_generate(p)?,
            CodeSource::Graph(g) => g.clone(),
        };
        HgpCode::new(&g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub code_source: CodeSource,
    pub p_grid: Vec<f64>,
    pub trials: u64,
    pub decoders: Vec<DecoderKind>,
    pub seed: u64,
    pub max_workers: usize,
    /// Record per-decoder wall time. Off by default so that output is
    /// reproducible byte for byte; when off `wall_time_s` is zero.
    pub record_timing: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidParams(m));
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return fail(format!("probability {p} outside [0, 1]"));
        }
        if self.trials == 0 {
            return fail("at least one trial per point is required".into());
        }
        if self.decoders.is_empty() {
            return fail("no decoders requested".into());
        }
        let mut seen = self.decoders.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.decoders.len() {
            return fail("duplicate decoder in list".into());
        }
        if self.max_workers == 0 {
            return fail("worker count must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub p: f64,
    pub decoder: DecoderKind,
    pub trials: u64,
    pub aborts: u64,
    pub logical_failures: u64,
    pub failure_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub wall_time_s: f64,
}

impl PointResult {
    pub fn failures(&self) -> u64 {
        self.aborts + self.logical_failures
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepResult {
    pub points: Vec<PointResult>,
}

impl SweepResult {
    pub fn get(&self, p: f64, decoder: DecoderKind) -> Option<&PointResult> {
        self.points.iter().find(|r| r.p == p && r.decoder == decoder)
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(failures: u64, trials: u64, confidence: f64) -> (f64, f64) {
    assert!(trials >= 1 && failures <= trials, "invalid counts");
    let z = Normal::new(0.0, 1.0)
        .expect("standard normal")
        .inverse_cdf(0.5 + confidence / 2.0);
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Clone, Copy, Default)]
struct Tally {
    aborts: u64,
    logical: u64,
    nanos: u128,
}

impl Tally {
    fn add(mut self, other: Tally) -> Tally {
        self.aborts += other.aborts;
        self.logical += other.logical;
        self.nanos += other.nanos;
        self
    }
}

fn run_point(code: &HgpCode, spec: &SweepSpec, p: f64) -> Result<Vec<Tally>> {
    let ndec = spec.decoders.len();
    let trial = |t: u64| -> Result<Vec<Tally>> {
        let s = sample(code, p, &RngStream::new(spec.seed, t))?;
        spec.decoders
            .iter()
            .map(|d| {
                let start = spec.record_timing.then(Instant::now);
                let verdict = d.verdict(code, &s)?;
                let mut t = Tally {
                    nanos: start.map_or(0, |s| s.elapsed().as_nanos()),
                    ..Tally::default()
                };
                match verdict {
                    Verdict::Success => {}
                    Verdict::Abort => t.aborts = 1,
                    Verdict::LogicalFailure => t.logical = 1,
                }
                Ok(t)
            })
            .collect()
    };
    let merge = |a: Vec<Tally>, b: Vec<Tally>| a.into_iter().zip(b).map(|(x, y)| x.add(y)).collect();
    (0..spec.trials)
        .into_par_iter()
        .map(trial)
        .try_reduce(|| vec![Tally::default(); ndec], |a, b| Ok(merge(a, b)))
}

/// Runs a sweep on an already constructed code.
pub fn run_sweep_on(code: &HgpCode, spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.max_workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start worker pool: {e}")))?;
    let mut points = Vec::new();
    for &p in &spec.p_grid {
        let tallies = pool.install(|| run_point(code, spec, p))?;
        for (decoder, t) in spec.decoders.iter().zip(tallies) {
            let failures = t.aborts + t.logical;
            let (ci_low, ci_high) = wilson_interval(failures, spec.trials, 0.95);
            points.push(PointResult {
                p,
                decoder: *decoder,
                trials: spec.trials,
                aborts: t.aborts,
                logical_failures: t.logical,
                failure_rate: failures as f64 / spec.trials as f64,
                ci_low,
                ci_high,
                wall_time_s: t.nanos as f64 * 1e-9,
            });
        }
    }
    Ok(SweepResult { points })
}

/// Loads the code named by the spec and runs the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let code = spec.code_source.load()?;
    run_sweep_on(&code, spec)
}

/// `%g`-style formatting with six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    }
}

pub const CSV_HEADER: &str =
    "p,decoder,trials,aborts,logical_failures,failure_rate,ci_low,ci_high,wall_time_s";

/// Writes the result as CSV sorted by `(p, decoder label)`.
pub fn write_csv<W: Write>(result: &SweepResult, mut sink: W) -> Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    let mut rows: Vec<&PointResult> = result.points.iter().collect();
    rows.sort_by(|a, b| {
        a.p.total_cmp(&b.p)
            .then_with(|| a.decoder.label().cmp(&b.decoder.label()))
    });
    for r in rows {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{},{}",
            format_sig6(r.p),
            r.decoder,
            r.trials,
            r.aborts,
            r.logical_failures,
            format_sig6(r.failure_rate),
            format_sig6(r.ci_low),
            format_sig6(r.ci_high),
            format_sig6(r.wall_time_s),
        )?;
    }
    Ok(())
}

/// `a:b:k`: `k` evenly spaced points from `a` to `b` inclusive.
pub fn parse_p_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParams(format!("p-grid {text:?} is not of the form a:b:k"));
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, k] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.parse().map_err(|_| bad())?;
    let b: f64 = b.parse().map_err(|_| bad())?;
    let k: usize = k.parse().map_err(|_| bad())?;
    match k {
        0 => Err(bad()),
        1 => Ok(vec![a]),
        _ => Ok((0..k)
            .map(|i| a + (b - a) * i as f64 / (k - 1) as f64)
            .collect()),
    }
}
