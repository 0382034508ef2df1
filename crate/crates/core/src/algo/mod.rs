//! The minimization algorithms and a name-based dispatcher.

pub mod partref;
pub mod sort;
pub mod trans;
pub mod transpr;

use std::fmt;
use std::str::FromStr;

use crate::dfa::Dfa;
use crate::error::MinimizeError;
use crate::parallel::RacePolicy;
use crate::partition::Partition;
use crate::stats::{Limits, RunStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Trans,
    Naive,
    NaiveCas,
    Sort,
    TransPr,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Trans,
        Algorithm::Naive,
        Algorithm::NaiveCas,
        Algorithm::Sort,
        Algorithm::TransPr,
        Algorithm::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Trans => "trans",
            Algorithm::Naive => "naive",
            Algorithm::NaiveCas => "naive-cas",
            Algorithm::Sort => "sort",
            Algorithm::TransPr => "transpr",
            Algorithm::Oracle => "oracle",
        }
    }

    /// Runs `self` on `dfa`. `policy` only affects `naive` and `transpr`.
    pub fn run(
        self,
        dfa: &Dfa,
        policy: RacePolicy,
        limits: &Limits,
    ) -> Result<(Partition, RunStats), MinimizeError> {
        match self {
            Algorithm::Trans => trans::trans_minimize(dfa, limits),
            Algorithm::Naive => partref::naive_pr(dfa, policy, limits),
            Algorithm::NaiveCas => partref::naive_pr_cas(dfa, limits),
            Algorithm::Sort => sort::sort_pr(dfa, limits),
            Algorithm::TransPr => transpr::trans_pr(dfa, policy, limits),
            Algorithm::Oracle => Ok(crate::oracle::moore_with_stats(dfa)),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.as_str()).collect();
                format!("unknown algorithm `{s}` (expected one of {})", names.join(", "))
            })
    }
}
