//! `dfamin` command-line tool.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use dfamin::algo::Algorithm;
use dfamin::bench::{self, BenchRecord, CheckError, CSV_HEADER, DEFAULT_REPEAT};
use dfamin::generators::{bit_splitter, chain_dfa, fib_dfa, random_dfa};
use dfamin::ingest::{lts_to_dfa, parse_lts, read_dfa, write_dfa, write_partition, DEFAULT_SUBSET_BUDGET};
use dfamin::parallel::{configure_threads, threads_from_env};
use dfamin::{Dfa, Limits, MinimizeError, RacePolicy, Status};

const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;
const EXIT_CAPACITY: u8 = 4;
const EXIT_DISAGREE: u8 = 5;

#[derive(Parser)]
#[command(name = "dfamin", version, about = "Parallel DFA minimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark DFA
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output file (default: stdout)
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Convert an .aut transition system into a complete DFA
    Ingest {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Maximum number of subset states
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: usize,
    },
    /// Minimize a DFA and write its partition
    Minimize {
        input: PathBuf,
        #[arg(long, default_value = "sort")]
        algo: Algorithm,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, default_value = "arbitrary")]
        policy: RacePolicy,
        /// Append a CSV record to this file
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Partition output file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every algorithm and verify that they agree
    Check {
        input: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, default_value = "min")]
        policy: RacePolicy,
    },
    /// Run algorithms over benchmark suites and write CSV
    Bench {
        /// `fib:5..15`, `bits:3..10`, `chain:4,64`, `random:100x2@7` or a directory
        #[arg(long, required = true)]
        suite: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "naive,naive-cas,sort,transpr")]
        algos: Vec<Algorithm>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, default_value = "arbitrary")]
        policy: RacePolicy,
        #[arg(long, default_value_t = DEFAULT_REPEAT)]
        repeat: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Fibonacci automaton for the n-th Fibonacci word (n >= 2)
    Fib { n: usize },
    /// Bit-splitter with 2^n states (n >= 1)
    Bits { n: usize },
    /// Unary chain of `len` states accepting only in the last (len >= 2)
    Chain { len: usize },
    /// Uniformly random complete DFA
    Random {
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        accept_prob: f64,
    },
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Per-run timeout in milliseconds; 0 disables it
    #[arg(long, default_value_t = 300_000)]
    timeout_ms: u64,
    #[arg(long)]
    max_mem_bytes: Option<u64>,
}

impl LimitArgs {
    fn limits(self) -> Limits {
        Limits {
            timeout: (self.timeout_ms > 0).then(|| Duration::from_millis(self.timeout_ms)),
            max_memory_bytes: self.max_mem_bytes,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<MinimizeError> for Failure {
    fn from(e: MinimizeError) -> Failure {
        let code = match e.status() {
            Status::Timeout => EXIT_TIMEOUT,
            _ => EXIT_CAPACITY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::usage(format!("stdout: {e}")))
        }
    }
}

/// Reads a DFA file; `.aut` files go through determinization first.
fn load_dfa(path: &Path) -> Result<Dfa, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let context = |e: &dyn std::fmt::Display| Failure::usage(format!("{}: {e}", path.display()));
    if path.extension().is_some_and(|e| e == "aut") {
        let lts = parse_lts(&text).map_err(|e| context(&e))?;
        lts_to_dfa(&lts, DEFAULT_SUBSET_BUDGET).map_err(|e| context(&e))
    } else {
        read_dfa(&text).map_err(|e| context(&e))
    }
}

fn cmd_gen(family: Family, output: Option<&Path>) -> CmdResult {
    let dfa = match family {
        Family::Fib { n } if n >= 2 => fib_dfa(n),
        Family::Bits { n } if n >= 1 => bit_splitter(n),
        Family::Chain { len } if len >= 2 => chain_dfa(len),
        Family::Random {
            n,
            k,
            seed,
            accept_prob,
        } if n >= 1 && k >= 1 && (0.0..=1.0).contains(&accept_prob) => random_dfa(n, k, seed, accept_prob),
        Family::Fib { .. } => return Err(Failure::usage("fib needs n >= 2")),
        Family::Bits { .. } => return Err(Failure::usage("bits needs n >= 1")),
        Family::Chain { .. } => return Err(Failure::usage("chain needs len >= 2")),
        Family::Random { .. } => {
            return Err(Failure::usage("random needs n >= 1, k >= 1 and accept-prob in [0, 1]"))
        }
    };
    emit(output, &write_dfa(&dfa))
}

fn cmd_ingest(input: &Path, output: Option<&Path>, budget: usize) -> CmdResult {
    let text = fs::read_to_string(input).map_err(|e| io_failure(input, e))?;
    let lts = parse_lts(&text).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let dfa = lts_to_dfa(&lts, budget).map_err(|e| Failure::usage(e.to_string()))?;
    emit(output, &write_dfa(&dfa))
}

fn append_stats(path: &Path, record: &BenchRecord) -> CmdResult {
    let fresh = fs::metadata(path).map_or(true, |m| m.len() == 0);
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| io_failure(path, e))?;
    let mut text = String::new();
    if fresh {
        text.push_str(CSV_HEADER);
        text.push('\n');
    }
    text.push_str(&record.to_csv_row());
    text.push('\n');
    file.write_all(text.as_bytes()).map_err(|e| io_failure(path, e))
}

fn cmd_minimize(
    input: &Path,
    algo: Algorithm,
    limits: Limits,
    policy: RacePolicy,
    stats: Option<&Path>,
    output: Option<&Path>,
) -> CmdResult {
    let dfa = load_dfa(input)?;
    let outcome = algo.run(&dfa, policy, &limits);
    if let Some(path) = stats {
        let name = input
            .file_stem()
            .map(|s| bench::sanitize_name(&s.to_string_lossy()))
            .unwrap_or_default();
        append_stats(path, &BenchRecord::from_outcome(&name, &dfa, algo, &outcome))?;
    }
    let (partition, _) = outcome?;
    emit(output, &write_partition(&partition))
}

fn cmd_check(input: &Path, limits: Limits, policy: RacePolicy) -> CmdResult {
    let dfa = load_dfa(input)?;
    let report = bench::cross_check(&dfa, policy, &limits).map_err(check_failure)?;
    println!("{report}");
    Ok(())
}

fn check_failure(e: CheckError) -> Failure {
    match e {
        CheckError::Run { algo, source } => {
            let mut f = Failure::from(source);
            f.message = format!("{algo}: {}", f.message);
            f
        }
        other => Failure {
            code: EXIT_DISAGREE,
            message: other.to_string(),
        },
    }
}

fn cmd_bench(
    specs: &[String],
    algos: &[Algorithm],
    limits: Limits,
    policy: RacePolicy,
    repeat: usize,
    output: Option<&Path>,
) -> CmdResult {
    if repeat == 0 {
        return Err(Failure::usage("--repeat must be at least 1"));
    }
    let mut suite = Vec::new();
    for spec in specs {
        suite.extend(bench::load_suite(spec).map_err(|e| Failure::usage(e.to_string()))?);
    }
    let records = bench::run_suite(&suite, algos, policy, &limits, repeat);
    emit(output, &bench::to_csv(&records))
}

fn run(cli: Cli) -> CmdResult {
    configure_threads(threads_from_env().map_err(Failure::usage)?);
    match cli.command {
        Command::Gen { family, output } => cmd_gen(family, output.as_deref()),
        Command::Ingest {
            input,
            output,
            budget,
        } => cmd_ingest(&input, output.as_deref(), budget),
        Command::Minimize {
            input,
            algo,
            limits,
            policy,
            stats,
            output,
        } => cmd_minimize(&input, algo, limits.limits(), policy, stats.as_deref(), output.as_deref()),
        Command::Check {
            input,
            limits,
            policy,
        } => cmd_check(&input, limits.limits(), policy),
        Command::Bench {
            suite,
            algos,
            limits,
            policy,
            repeat,
            output,
        } => cmd_bench(&suite, &algos, limits.limits(), policy, repeat, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dfamin: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dfamin::bench::first_disagreement;
    use dfamin::partition::canonicalize;

    #[test]
    fn corrupted_partition_exits_with_disagreement() {
        let good = canonicalize(&[0, 0, 1]);
        let bad = canonicalize(&[0, 1, 1]);
        let e = first_disagreement(&[(Algorithm::Oracle, good), (Algorithm::Sort, bad)]).unwrap();
        let f = check_failure(e);
        assert_eq!(f.code, EXIT_DISAGREE);
        assert_eq!(f.message, "oracle and sort disagree on states 0 and 1");
    }

    #[test]
    fn run_errors_keep_their_exit_code() {
        let e = CheckError::Run {
            algo: Algorithm::Trans,
            source: MinimizeError::CapacityExceeded {
                required_bytes: 10,
                limit_bytes: 1,
            },
        };
        assert_eq!(check_failure(e).code, EXIT_CAPACITY);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
