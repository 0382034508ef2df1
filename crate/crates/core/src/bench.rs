//! Benchmark suites, CSV records and the all-algorithms cross-check.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::algo::Algorithm;
use crate::dfa::Dfa;
use crate::equivalence::language_equivalent;
use crate::error::MinimizeError;
use crate::generators::{bit_splitter, chain_dfa, fib_dfa, random_dfa};
use crate::ingest::{lts_to_dfa, parse_lts, read_dfa, DEFAULT_SUBSET_BUDGET};
use crate::parallel::RacePolicy;
use crate::partition::{disagreement_witness, Partition};
use crate::quotient::quotient;
use crate::stats::{Limits, RunStats, Status};

pub const CSV_HEADER: &str = "benchmark,n,k,algo,output_blocks,iterations,closure_steps,time_ms,status";

/// Timings are averaged over this many runs unless told otherwise.
pub const DEFAULT_REPEAT: usize = 5;

/// Largest input `check` hands to the pair-graph algorithm.
pub const CHECK_TRANS_MAX_STATES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub benchmark: String,
    pub n: usize,
    pub k: usize,
    pub algo: Algorithm,
    /// `None` unless `status` is ok.
    pub output_blocks: Option<usize>,
    pub iterations: Option<u64>,
    pub closure_steps: u64,
    pub time_ms: f64,
    pub status: Status,
}

impl BenchRecord {
    pub fn from_outcome(
        benchmark: &str,
        dfa: &Dfa,
        algo: Algorithm,
        outcome: &Result<(Partition, RunStats), MinimizeError>,
    ) -> BenchRecord {
        let mut record = BenchRecord {
            benchmark: benchmark.to_string(),
            n: dfa.num_states(),
            k: dfa.alphabet_size(),
            algo,
            output_blocks: None,
            iterations: None,
            closure_steps: 0,
            time_ms: 0.0,
            status: Status::Ok,
        };
        match outcome {
            Ok((p, stats)) => {
                record.output_blocks = Some(p.num_blocks());
                record.iterations = Some(stats.iterations);
                record.closure_steps = stats.closure_steps;
                record.time_ms = stats.elapsed_ms;
            }
            Err(e) => {
                record.status = e.status();
                if let MinimizeError::Timeout { elapsed_ms, .. } = e {
                    record.time_ms = *elapsed_ms;
                }
            }
        }
        record
    }

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{:.3},{}",
            self.benchmark,
            self.n,
            self.k,
            self.algo,
            opt(self.output_blocks.map(|b| b.to_string())),
            opt(self.iterations.map(|i| i.to_string())),
            self.closure_steps,
            self.time_ms,
            self.status
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{}", r.to_csv_row());
    }
    out
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("malformed suite spec `{spec}`: {reason}")]
    Malformed { spec: String, reason: String },
    #[error("suite `{0}` is empty")]
    Empty(String),
    #[error("{path}: {message}")]
    Load { path: PathBuf, message: String },
}

#[derive(Debug, Clone)]
pub struct Benchmark {
    pub name: String,
    pub dfa: Dfa,
}

fn malformed(spec: &str, reason: impl Into<String>) -> SuiteError {
    SuiteError::Malformed {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// `a..b` (inclusive) or a comma list.
fn parse_values(spec: &str, values: &str) -> Result<Vec<usize>, SuiteError> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| malformed(spec, format!("`{s}` is not a number")))
    };
    if let Some((lo, hi)) = values.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(malformed(spec, "empty range"));
        }
        Ok((lo..=hi).collect())
    } else {
        values.split(',').map(num).collect()
    }
}

/// Parses and generates a suite. Accepted forms:
///
/// * `fib:5..15`, `bits:3..10`, `chain:4,64,1024` (ranges are inclusive)
/// * `random:<n>x<k>[,...]`, optionally followed by `@<seed>`
/// * a path to a directory of `.dfa` and `.aut` files
pub fn load_suite(spec: &str) -> Result<Vec<Benchmark>, SuiteError> {
    let suite = match spec.split_once(':') {
        Some((family @ ("fib" | "bits" | "chain"), values)) => {
            let mut out = Vec::new();
            for v in parse_values(spec, values)? {
                let dfa = match family {
                    "fib" if v >= 2 => fib_dfa(v),
                    "bits" if v >= 1 => bit_splitter(v),
                    "chain" if v >= 2 => chain_dfa(v),
                    _ => return Err(malformed(spec, format!("{family} parameter {v} out of range"))),
                };
                out.push(Benchmark {
                    name: format!("{family}_{v}"),
                    dfa,
                });
            }
            out
        }
        Some(("random", rest)) => {
            let (sizes, seed) = match rest.split_once('@') {
                Some((s, seed)) => (
                    s,
                    seed.parse::<u64>()
                        .map_err(|_| malformed(spec, "seed must be an integer"))?,
                ),
                None => (rest, 0),
            };
            let mut out = Vec::new();
            for item in sizes.split(',') {
                let (n, k) = item
                    .split_once('x')
                    .ok_or_else(|| malformed(spec, "expected <n>x<k>"))?;
                let (n, k) = match (n.parse::<usize>(), k.parse::<usize>()) {
                    (Ok(n), Ok(k)) if n >= 1 => (n, k),
                    _ => return Err(malformed(spec, format!("bad size `{item}`"))),
                };
                out.push(Benchmark {
                    name: format!("random_{n}x{k}_s{seed}"),
                    dfa: random_dfa(n, k, seed, 0.5),
                });
            }
            out
        }
        _ => {
            let path = Path::new(spec);
            if !path.is_dir() {
                return Err(malformed(spec, "unknown family and not a directory"));
            }
            load_dir(path)?
        }
    };
    if suite.is_empty() {
        return Err(SuiteError::Empty(spec.to_string()));
    }
    Ok(suite)
}

fn load_dir(dir: &Path) -> Result<Vec<Benchmark>, SuiteError> {
    let load_err = |path: &Path, message: String| SuiteError::Load {
        path: path.to_path_buf(),
        message,
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| load_err(dir, e.to_string()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("dfa" | "aut")))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(&path).map_err(|e| load_err(&path, e.to_string()))?;
        let dfa = if path.extension().is_some_and(|e| e == "aut") {
            let lts = parse_lts(&text).map_err(|e| load_err(&path, e.to_string()))?;
            lts_to_dfa(&lts, DEFAULT_SUBSET_BUDGET).map_err(|e| load_err(&path, e.to_string()))?
        } else {
            read_dfa(&text).map_err(|e| load_err(&path, e.to_string()))?
        };
        out.push(Benchmark {
            name: sanitize_name(&path.file_stem().unwrap_or_default().to_string_lossy()),
            dfa,
        });
    }
    Ok(out)
}

/// Maps characters outside `[A-Za-z0-9_.:-]` to `_` so names never need
/// CSV quoting.
pub fn sanitize_name(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "_.:-".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Runs `algo` up to `repeat` times and averages the elapsed time. The first
/// failing run ends the series and determines the record.
pub fn bench_one(
    bench: &Benchmark,
    algo: Algorithm,
    policy: RacePolicy,
    limits: &Limits,
    repeat: usize,
) -> BenchRecord {
    let mut total_ms = 0.0;
    let mut last = None;
    for _ in 0..repeat.max(1) {
        let outcome = algo.run(&bench.dfa, policy, limits);
        if outcome.is_err() {
            return BenchRecord::from_outcome(&bench.name, &bench.dfa, algo, &outcome);
        }
        total_ms += outcome.as_ref().map_or(0.0, |(_, s)| s.elapsed_ms);
        last = Some(outcome);
    }
    let outcome = last.expect("at least one run");
    let mut record = BenchRecord::from_outcome(&bench.name, &bench.dfa, algo, &outcome);
    record.time_ms = total_ms / repeat.max(1) as f64;
    record
}

pub fn run_suite(
    suite: &[Benchmark],
    algos: &[Algorithm],
    policy: RacePolicy,
    limits: &Limits,
    repeat: usize,
) -> Vec<BenchRecord> {
    suite
        .iter()
        .flat_map(|b| algos.iter().map(move |&a| (b, a)))
        .map(|(b, a)| bench_one(b, a, policy, limits, repeat))
        .collect()
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("{left} and {right} disagree on states {p} and {q}")]
    Disagreement {
        left: Algorithm,
        right: Algorithm,
        p: usize,
        q: usize,
    },
    #[error("quotient by the {0} partition is not language equivalent to the input")]
    QuotientNotEquivalent(Algorithm),
    #[error("{algo}: {source}")]
    Run {
        algo: Algorithm,
        source: MinimizeError,
    },
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub runs: Vec<(Algorithm, RunStats)>,
    pub num_blocks: usize,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (algo, stats) in &self.runs {
            writeln!(
                f,
                "{algo:>10}: {} blocks, {} iterations, {:.3} ms",
                self.num_blocks, stats.iterations, stats.elapsed_ms
            )?;
        }
        write!(f, "all {} algorithms agree", self.runs.len())
    }
}

/// The first pair of partitions that differ, with a witness pair of states.
pub fn first_disagreement(results: &[(Algorithm, Partition)]) -> Option<CheckError> {
    for (i, (left, p)) in results.iter().enumerate() {
        for (right, q) in &results[i + 1..] {
            if let Some((s, t)) = disagreement_witness(p, q) {
                return Some(CheckError::Disagreement {
                    left: *left,
                    right: *right,
                    p: s,
                    q: t,
                });
            }
        }
    }
    None
}

/// Runs every algorithm on `dfa` (the pair-graph one only up to
/// [`CHECK_TRANS_MAX_STATES`]), requires all partitions to be equal and the
/// quotient to accept the same language.
pub fn cross_check(dfa: &Dfa, policy: RacePolicy, limits: &Limits) -> Result<CheckReport, CheckError> {
    let algos: Vec<Algorithm> = [
        Algorithm::Oracle,
        Algorithm::Naive,
        Algorithm::NaiveCas,
        Algorithm::Sort,
        Algorithm::TransPr,
    ]
    .into_iter()
    .chain((dfa.num_states() <= CHECK_TRANS_MAX_STATES).then_some(Algorithm::Trans))
    .collect();
    let mut partitions = Vec::new();
    let mut runs = Vec::new();
    for algo in algos {
        let (p, stats) = algo
            .run(dfa, policy, limits)
            .map_err(|source| CheckError::Run { algo, source })?;
        partitions.push((algo, p));
        runs.push((algo, stats));
    }
    if let Some(e) = first_disagreement(&partitions) {
        return Err(e);
    }
    let (algo, p) = &partitions[0];
    let q = quotient(dfa, p).map_err(|_| CheckError::QuotientNotEquivalent(*algo))?;
    if !language_equivalent(dfa, &q).unwrap_or(false) {
        return Err(CheckError::QuotientNotEquivalent(*algo));
    }
    Ok(CheckReport {
        runs,
        num_blocks: p.num_blocks(),
    })
}
