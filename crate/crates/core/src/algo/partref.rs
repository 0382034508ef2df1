//! Leader-election partition refinement.
//!
//! Every block is named by one of its states, the leader. In each iteration
//! a state that disagrees with its leader on the block reached by some
//! letter is split off; all states split off from one block join a single
//! new block, led by a state elected through a concurrent write. Blocks
//! therefore split at most in two per iteration.
//!
//! Reads within an iteration always see the block array as it was when the
//! iteration started.

use std::sync::atomic::{AtomicBool, Ordering::Relaxed};

use rayon::prelude::*;

use crate::dfa::{Dfa, StateId};
use crate::error::MinimizeError;
use crate::parallel::{RaceArray, RacePolicy};
use crate::partition::{canonicalize, Partition};
use crate::stats::{Deadline, Limits, RunStats};

/// Initial leader array: each state points at the smallest-id state of its
/// acceptance class.
pub fn initial_leaders(dfa: &Dfa) -> Vec<StateId> {
    let mask = dfa.accepting_mask();
    let first_acc = mask.iter().position(|&a| a);
    let first_rej = mask.iter().position(|&a| !a);
    mask.iter()
        .map(|&acc| if acc { first_acc } else { first_rej }.unwrap() as StateId)
        .collect()
}

#[inline]
fn differs_from_leader(dfa: &Dfa, block: &[StateId], q: usize) -> bool {
    let leader = block[q] as usize;
    dfa.rows()
        .iter()
        .any(|row| block[row[q] as usize] != block[row[leader] as usize])
}

/// Two-phase leader election with concurrent writes resolved by `policy`.
pub fn naive_pr(
    dfa: &Dfa,
    policy: RacePolicy,
    limits: &Limits,
) -> Result<(Partition, RunStats), MinimizeError> {
    let clock = Deadline::start(limits.timeout);
    naive_pr_traced(dfa, policy, &clock, |_, _| {})
}

/// [`naive_pr`] against an externally started clock; `observe` gets the
/// leader array after every iteration.
pub fn naive_pr_traced<F>(
    dfa: &Dfa,
    policy: RacePolicy,
    clock: &Deadline,
    mut observe: F,
) -> Result<(Partition, RunStats), MinimizeError>
where
    F: FnMut(u64, &[StateId]),
{
    let n = dfa.num_states();
    let mut block = initial_leaders(dfa);
    let mut next = vec![0 as StateId; n];
    let mut split = vec![false; n];
    let new_leader = RaceArray::new(n, policy);
    let mut iterations = 0u64;
    loop {
        clock.check(iterations)?;
        iterations += 1;

        // phase A: every state that differs from its leader votes for itself
        let frozen = &block;
        split
            .par_iter_mut()
            .enumerate()
            .for_each(|(q, hit)| {
                *hit = differs_from_leader(dfa, frozen, q);
                if *hit {
                    new_leader.write(frozen[q] as usize, q as StateId);
                }
            });

        // phase B: the condition is the same one phase A evaluated on the
        // same frozen array, so the recorded flags are reused
        let stable = AtomicBool::new(true);
        next.par_iter_mut()
            .zip(split.par_iter())
            .enumerate()
            .for_each(|(q, (slot, &hit))| {
                let leader = frozen[q];
                *slot = if hit {
                    stable.store(false, Relaxed);
                    new_leader
                        .get(leader as usize)
                        .expect("a split state has voted in its block")
                } else {
                    leader
                };
            });
        std::mem::swap(&mut block, &mut next);
        new_leader.clear();
        observe(iterations, &block);
        if stable.into_inner() {
            break;
        }
    }
    let peak = (n * (4 * 3 + 1)) as u64;
    Ok((canonicalize(&block), RunStats::ok(iterations, clock, peak)))
}

/// Fused single-loop variant: the election is a compare-and-swap on the
/// block's `new_leader` cell, and the loser adopts the winner at once.
pub fn naive_pr_cas(dfa: &Dfa, limits: &Limits) -> Result<(Partition, RunStats), MinimizeError> {
    let clock = Deadline::start(limits.timeout);
    naive_pr_cas_traced(dfa, &clock, |_, _| {})
}

pub fn naive_pr_cas_traced<F>(
    dfa: &Dfa,
    clock: &Deadline,
    mut observe: F,
) -> Result<(Partition, RunStats), MinimizeError>
where
    F: FnMut(u64, &[StateId]),
{
    let n = dfa.num_states();
    let mut block = initial_leaders(dfa);
    let mut next = vec![0 as StateId; n];
    // CAS has its own winner semantics; the policy only matters for plain writes
    let new_leader = RaceArray::new(n, RacePolicy::ArbitraryWinner);
    let mut iterations = 0u64;
    loop {
        clock.check(iterations)?;
        iterations += 1;
        let frozen = &block;
        let stable = AtomicBool::new(true);
        next.par_iter_mut().enumerate().for_each(|(q, slot)| {
            let leader = frozen[q];
            *slot = if differs_from_leader(dfa, frozen, q) {
                stable.store(false, Relaxed);
                match new_leader.claim(leader as usize, q as StateId) {
                    Ok(()) => q as StateId,
                    Err(winner) => winner,
                }
            } else {
                leader
            };
        });
        std::mem::swap(&mut block, &mut next);
        new_leader.clear();
        observe(iterations, &block);
        if stable.into_inner() {
            break;
        }
    }
    let peak = (n * 4 * 3) as u64;
    Ok((canonicalize(&block), RunStats::ok(iterations, clock, peak)))
}
