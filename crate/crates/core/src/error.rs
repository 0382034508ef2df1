use std::fmt;

use thiserror::Error;

use crate::stats::Status;

/// Structural problems with a [`Dfa`](crate::Dfa) under construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfaError {
    #[error("a DFA needs at least one state")]
    NoStates,
    #[error("too many states: {0} (state ids are 32-bit)")]
    TooManyStates(usize),
    #[error("transition row {letter} has {len} entries, expected {expected}")]
    RowLength {
        letter: usize,
        len: usize,
        expected: usize,
    },
    #[error("delta[{letter}][{state}] = {target} is out of range for {num_states} states")]
    TargetOutOfRange {
        letter: usize,
        state: usize,
        target: u32,
        num_states: usize,
    },
    #[error("initial state {initial} is out of range for {num_states} states")]
    InitialOutOfRange { initial: u32, num_states: usize },
    #[error("accepting state {state} is out of range for {num_states} states")]
    AcceptingOutOfRange { state: u32, num_states: usize },
    #[error("acceptance mask has {len} entries, expected {expected}")]
    AcceptingLength { len: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partitions cover {left} and {right} states")]
    LengthMismatch { left: usize, right: usize },
    #[error("partition covers {partition} states but the DFA has {dfa}")]
    WrongSize { partition: usize, dfa: usize },
    #[error("states {p} and {q} share block {block} but disagree on acceptance")]
    MixedAcceptance { p: usize, q: usize, block: u32 },
    #[error("states {p} and {q} share block {block} but letter {letter} maps them to different blocks")]
    Inconsistent {
        p: usize,
        q: usize,
        block: u32,
        letter: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("alphabet sizes differ: {left} vs {right}")]
pub struct AlphabetMismatch {
    pub left: usize,
    pub right: usize,
}

/// Why a minimization run stopped without a result.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MinimizeError {
    #[error("timed out after {elapsed_ms:.1} ms ({iterations} iterations completed)")]
    Timeout { elapsed_ms: f64, iterations: u64 },
    #[error("capacity exceeded: needs {required_bytes} bytes, limit is {limit_bytes} bytes")]
    CapacityExceeded {
        required_bytes: u64,
        limit_bytes: u64,
    },
}

impl MinimizeError {
    pub fn status(&self) -> Status {
        match self {
            MinimizeError::Timeout { .. } => Status::Timeout,
            MinimizeError::CapacityExceeded { .. } => Status::CapacityExceeded,
        }
    }
}

/// Error while reading a textual transition system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LtsParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminizeError {
    #[error("subset construction exceeded the budget of {budget} states")]
    StateBudgetExceeded { budget: usize },
}

/// Error while reading the DFA file format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing {0}")]
    Missing(Section),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unsupported format version {0}")]
    Version(String),
    #[error(transparent)]
    Invalid(#[from] DfaError),
}

/// Named parts of a DFA file, used to report truncated input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Header,
    Accepting,
    Transitions(usize),
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::Header => f.write_str("header line `DFA 1 <n> <k> <initial>`"),
            Section::Accepting => f.write_str("accepting line `ACC <count> ...`"),
            Section::Transitions(a) => write!(f, "transition row for letter {a}"),
        }
    }
}
