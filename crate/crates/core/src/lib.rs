//! Parallel DFA minimization.
//!
//! Several partition-refinement algorithms over a shared data-parallel
//! substrate, plus benchmark generators, an LTS front end and a sequential
//! reference implementation used to check them.

pub mod algo;
pub mod bench;
pub mod dfa;
pub mod equivalence;
pub mod error;
pub mod generators;
pub mod ingest;
pub mod lts;
pub mod oracle;
pub mod parallel;
pub mod partition;
pub mod quotient;
pub mod reachability;
pub mod stats;

pub use algo::Algorithm;
pub use dfa::{Dfa, StateId};
pub use error::{DfaError, FormatError, MinimizeError, PartitionError};
pub use parallel::RacePolicy;
pub use partition::{partitions_equal, Partition};
pub use stats::{Limits, RunStats, Status};
