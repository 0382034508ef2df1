//! Pairwise apartness through transitive closure of the pair graph.
//!
//! Nodes are pairs `(q, q')`, indexed `q * n + q'`, with an edge to
//! `(δ(q, a), δ(q', a))` for every letter. Each iteration squares the
//! reachability relation (one closure step) and then marks every pair that
//! reaches an apart pair as apart. The loop ends after the first iteration
//! that marks nothing new.

use std::sync::atomic::{AtomicBool, Ordering::Relaxed};

use rayon::prelude::*;

use crate::dfa::Dfa;
use crate::error::MinimizeError;
use crate::partition::{canonicalize, Partition};
use crate::stats::{Deadline, Limits, RunStats};

/// Bytes for the `n^4`-bit reachability matrix.
pub fn trans_required_bytes(n: usize) -> u64 {
    let bits = (n as u128).pow(4);
    bits.div_ceil(8).try_into().unwrap_or(u64::MAX)
}

/// Largest state count whose reachability matrix fits in
/// `max_memory_bytes`, i.e. `floor((8 * max_memory_bytes)^(1/4))`.
pub fn trans_max_states(max_memory_bytes: u64) -> usize {
    let budget_bits = 8 * max_memory_bytes as u128;
    let mut n = (budget_bits as f64).powf(0.25) as u128;
    while n.pow(4) > budget_bits {
        n -= 1;
    }
    while (n + 1).pow(4) <= budget_bits {
        n += 1;
    }
    n as usize
}

/// Row-packed `n² × n²` bit matrix over pair nodes.
#[derive(Clone, PartialEq, Eq)]
pub struct ReachMatrix {
    nodes: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ReachMatrix {
    fn empty(nodes: usize) -> ReachMatrix {
        let words = nodes.div_ceil(64);
        ReachMatrix {
            nodes,
            words,
            bits: vec![0; nodes * words],
        }
    }

    /// One-step edges of the pair graph of `dfa`.
    pub fn initial(dfa: &Dfa) -> ReachMatrix {
        let n = dfa.num_states();
        let mut m = ReachMatrix::empty(n * n);
        let words = m.words;
        m.bits
            .par_chunks_mut(words)
            .enumerate()
            .for_each(|(s, row)| {
                let (q, q2) = (s / n, s % n);
                for a in 0..dfa.alphabet_size() {
                    let d = dfa.delta(a);
                    let t = d[q] as usize * n + d[q2] as usize;
                    row[t / 64] |= 1 << (t % 64);
                }
            });
        m
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    fn row(&self, s: usize) -> &[u64] {
        &self.bits[s * self.words..(s + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> bool {
        self.row(s)[t / 64] >> (t % 64) & 1 == 1
    }

    /// True iff every edge of `self` is also in `other`.
    pub fn is_subset_of(&self, other: &ReachMatrix) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn heap_bytes(&self) -> u64 {
        (self.bits.len() * 8) as u64
    }
}

/// Per-pair apartness flags, stored as a bitset over pair nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApartArray {
    n: usize,
    bits: Vec<u64>,
}

impl ApartArray {
    /// `(q ∈ F) xor (q' ∈ F)` for every pair.
    pub fn initial(dfa: &Dfa) -> ApartArray {
        let n = dfa.num_states();
        let mut bits = vec![0u64; (n * n).div_ceil(64)];
        for q in 0..n {
            for q2 in 0..n {
                if dfa.is_accepting(q as u32) != dfa.is_accepting(q2 as u32) {
                    let s = q * n + q2;
                    bits[s / 64] |= 1 << (s % 64);
                }
            }
        }
        ApartArray { n, bits }
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn node(&self, s: usize) -> bool {
        self.bits[s / 64] >> (s % 64) & 1 == 1
    }

    pub fn is_apart(&self, q: usize, q2: usize) -> bool {
        self.node(q * self.n + q2)
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_subset_of(&self, other: &ApartArray) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Groups `q` with the smallest `q'` it is not apart from.
    pub fn to_partition(&self) -> Partition {
        let raw: Vec<u32> = (0..self.n)
            .map(|q| (0..=q).find(|&r| !self.is_apart(r, q)).unwrap_or(q) as u32)
            .collect();
        canonicalize(&raw)
    }
}

/// Minimizes `dfa` with the pair-graph closure. Fails fast when the
/// reachability matrix alone would exceed `limits.max_memory_bytes`.
pub fn trans_minimize(dfa: &Dfa, limits: &Limits) -> Result<(Partition, RunStats), MinimizeError> {
    let (apart, stats) = trans_apart(dfa, limits, |_, _, _| {})?;
    Ok((apart.to_partition(), stats))
}

/// Runs the closure loop and returns the final apartness relation.
/// `observe` sees the matrices after every completed iteration.
pub fn trans_apart<F>(
    dfa: &Dfa,
    limits: &Limits,
    mut observe: F,
) -> Result<(ApartArray, RunStats), MinimizeError>
where
    F: FnMut(u64, &ReachMatrix, &ApartArray),
{
    let clock = Deadline::start(limits.timeout);
    let n = dfa.num_states();
    limits.check_memory(trans_required_bytes(n))?;

    let mut reach = ReachMatrix::initial(dfa);
    let mut next = ReachMatrix::empty(n * n);
    let mut apart = ApartArray::initial(dfa);
    let words = reach.words;
    let cancelled = AtomicBool::new(false);
    let mut iterations = 0u64;
    loop {
        clock.check(iterations)?;
        iterations += 1;

        // closure step: next[s] = reach[s] | OR_{t in reach[s]} reach[t]
        let old = &reach;
        next.bits
            .par_chunks_mut(words)
            .enumerate()
            .for_each(|(s, out)| {
                if cancelled.load(Relaxed) {
                    return;
                }
                if clock.expired() {
                    cancelled.store(true, Relaxed);
                    return;
                }
                let row = old.row(s);
                out.copy_from_slice(row);
                for (w, &word) in row.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let t = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for (o, r) in out.iter_mut().zip(old.row(t)) {
                            *o |= r;
                        }
                    }
                }
            });
        if cancelled.load(Relaxed) {
            return Err(MinimizeError::Timeout {
                elapsed_ms: clock.elapsed_ms(),
                iterations: iterations - 1,
            });
        }
        std::mem::swap(&mut reach, &mut next);

        // propagation: s becomes apart when it reaches an apart node
        let flags: Vec<bool> = (0..n * n)
            .into_par_iter()
            .map(|s| {
                apart.node(s)
                    || reach
                        .row(s)
                        .iter()
                        .zip(&apart.bits)
                        .any(|(r, a)| r & a != 0)
            })
            .collect();
        let mut changed = false;
        for (s, &flag) in flags.iter().enumerate() {
            if flag && !apart.node(s) {
                apart.bits[s / 64] |= 1 << (s % 64);
                changed = true;
            }
        }
        observe(iterations, &reach, &apart);
        if !changed {
            break;
        }
    }
    let peak = reach.heap_bytes() + next.heap_bytes() + 2 * (apart.bits.len() * 8) as u64;
    Ok((apart, RunStats::ok(iterations, &clock, peak)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fib_dfa, random_dfa};
    use crate::oracle::moore_oracle;
    use crate::partition::partitions_equal;

    #[test]
    fn guard_arithmetic() {
        assert_eq!(trans_required_bytes(100), 12_500_000);
        assert_eq!(trans_required_bytes(2), 2);
        assert_eq!(trans_max_states(12_500_000), 100);
        assert_eq!(trans_max_states(12_499_999), 99);
        assert_eq!(trans_max_states(0), 0);
        let err = trans_minimize(&random_dfa(100, 2, 0, 0.5), &Limits::unlimited().with_max_memory(1_000_000));
        assert_eq!(
            err.unwrap_err(),
            MinimizeError::CapacityExceeded {
                required_bytes: 12_500_000,
                limit_bytes: 1_000_000
            }
        );
    }

    #[test]
    fn fib_with_eight_states() {
        let dfa = fib_dfa(5);
        let (p, stats) = trans_minimize(&dfa, &Limits::unlimited()).unwrap();
        assert!(p.is_discrete());
        assert!((2..=4).contains(&stats.iterations), "{}", stats.iterations);
    }

    #[test]
    fn all_accepting_takes_one_iteration() {
        let dfa = Dfa::new(4, vec![vec![1, 2, 3, 0], vec![0, 0, 2, 1]], vec![true; 4], 0).unwrap();
        let (p, stats) = trans_minimize(&dfa, &Limits::unlimited()).unwrap();
        assert_eq!(p.num_blocks(), 1);
        assert_eq!(stats.iterations, 1);
    }

    #[test]
    fn final_apart_is_closed_symmetric_and_transitive() {
        for seed in 0..30 {
            let dfa = random_dfa(12, 2, seed, 0.4);
            let n = dfa.num_states();
            let reach0 = ReachMatrix::initial(&dfa);
            let mut prev: Option<(ReachMatrix, ApartArray)> = None;
            let (apart, _) = trans_apart(&dfa, &Limits::unlimited(), |_, r, a| {
                if let Some((pr, pa)) = &prev {
                    assert!(pr.is_subset_of(r) && pa.is_subset_of(a), "monotone");
                }
                prev = Some((r.clone(), a.clone()));
            })
            .unwrap();
            for s in 0..n * n {
                for t in 0..n * n {
                    if reach0.get(s, t) && apart.node(t) {
                        assert!(apart.node(s));
                    }
                }
            }
            for p in 0..n {
                assert!(!apart.is_apart(p, p));
                for q in 0..n {
                    assert_eq!(apart.is_apart(p, q), apart.is_apart(q, p));
                    for r in 0..n {
                        if !apart.is_apart(p, q) && !apart.is_apart(q, r) {
                            assert!(!apart.is_apart(p, r));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn matches_oracle_on_random_inputs() {
        for seed in 0..200u64 {
            let n = 1 + (seed as usize * 7) % 40;
            let k = 1 + seed as usize % 3;
            let dfa = random_dfa(n, k, seed, [0.0, 0.1, 0.5, 1.0][seed as usize % 4]);
            let (p, _) = trans_minimize(&dfa, &Limits::unlimited()).unwrap();
            assert!(partitions_equal(&p, &moore_oracle(&dfa)).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn times_out() {
        let dfa = fib_dfa(10);
        let limits = Limits::unlimited().with_timeout(std::time::Duration::ZERO);
        assert!(matches!(
            trans_minimize(&dfa, &limits),
            Err(MinimizeError::Timeout { .. })
        ));
    }
}
