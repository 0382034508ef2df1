//! Leader-election refinement on an alphabet extended with letter powers.
//!
//! For every letter `a` and `i` in `0..=⌊log₂ n⌋` the expanded DFA has a
//! letter for `a^(2^i)`, computed by pointer doubling. A chain of length `n`
//! then splits in a logarithmic number of iterations.

use rayon::prelude::*;

use crate::dfa::{Dfa, StateId};
use crate::error::MinimizeError;
use crate::parallel::RacePolicy;
use crate::partition::Partition;
use crate::stats::{Deadline, Limits, RunStats};

use super::partref::naive_pr_traced;

#[derive(Debug, Clone)]
pub struct ExpandedDfa {
    dfa: Dfa,
    base_alphabet: usize,
    powers: usize,
}

impl ExpandedDfa {
    /// The expanded automaton; letter `(a, i)` sits at index `i * k + a`.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn base_alphabet(&self) -> usize {
        self.base_alphabet
    }

    /// Number of powers per base letter, `⌊log₂ n⌋ + 1`.
    pub fn powers(&self) -> usize {
        self.powers
    }

    pub fn letter(&self, a: usize, i: usize) -> usize {
        i * self.base_alphabet + a
    }

    /// Transition row of `a^(2^i)`.
    pub fn power(&self, a: usize, i: usize) -> &[StateId] {
        self.dfa.delta(self.letter(a, i))
    }

    /// Doubling rounds performed, `⌊log₂ n⌋`.
    pub fn closure_steps(&self) -> u64 {
        self.powers as u64 - 1
    }
}

pub fn expansion_powers(n: usize) -> usize {
    n.max(1).ilog2() as usize + 1
}

/// Bytes for the expanded transition table.
pub fn expansion_required_bytes(n: usize, k: usize) -> u64 {
    (expansion_powers(n) * k * n) as u64 * std::mem::size_of::<StateId>() as u64
}

pub fn expand_alphabet(dfa: &Dfa, limits: &Limits) -> Result<ExpandedDfa, MinimizeError> {
    let n = dfa.num_states();
    let k = dfa.alphabet_size();
    limits.check_memory(expansion_required_bytes(n, k))?;
    let powers = expansion_powers(n);
    let mut rows: Vec<Vec<StateId>> = Vec::with_capacity(powers * k);
    rows.extend(dfa.rows().iter().cloned());
    for i in 1..powers {
        let start = rows.len();
        let prev = &rows[(i - 1) * k..i * k];
        let round: Vec<Vec<StateId>> = prev
            .iter()
            .map(|row| row.par_iter().map(|&p| row[p as usize]).collect())
            .collect();
        rows.extend(round);
        debug_assert_eq!(rows.len(), start + k);
    }
    let dfa = Dfa::new(n, rows, dfa.accepting_mask().to_vec(), dfa.initial())
        .expect("expanded rows stay within the state set");
    Ok(ExpandedDfa {
        dfa,
        base_alphabet: k,
        powers,
    })
}

pub fn trans_pr(
    dfa: &Dfa,
    policy: RacePolicy,
    limits: &Limits,
) -> Result<(Partition, RunStats), MinimizeError> {
    let clock = Deadline::start(limits.timeout);
    let expanded = expand_alphabet(dfa, limits)?;
    clock.check(0)?;
    let (partition, mut stats) = naive_pr_traced(expanded.dfa(), policy, &clock, |_, _| {})?;
    stats.closure_steps = expanded.closure_steps();
    stats.peak_memory_bytes += expansion_required_bytes(dfa.num_states(), dfa.alphabet_size());
    Ok((partition, stats))
}
