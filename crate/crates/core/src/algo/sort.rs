//! Signature-sorting partition refinement.
//!
//! Each iteration builds the signature of every state (the blocks its
//! successors lie in, letter by letter), sorts states by `(block,
//! signature)`, marks key changes with an adjacent difference and turns the
//! marks into new block labels with an inclusive scan. A block can split into
//! any number of pieces per iteration. The loop stops once the block count
//! stops growing.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU32, Ordering::Relaxed};

use rayon::prelude::*;

use crate::dfa::{Dfa, StateId};
use crate::error::MinimizeError;
use crate::parallel::{adjacent_diff, inclusive_scan, par_sort};
use crate::partition::{canonicalize, Partition};
use crate::stats::{Deadline, Limits, RunStats};

/// `n × k` table of successor block labels, row-major by state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTable {
    n: usize,
    k: usize,
    cells: Vec<u32>,
}

impl SignatureTable {
    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, q: usize) -> &[u32] {
        &self.cells[q * self.k..(q + 1) * self.k]
    }

    /// Lexicographic on `(block[q], signature[q][0..k])`.
    #[inline]
    pub fn compare(&self, block: &[u32], q1: usize, q2: usize) -> Ordering {
        block[q1]
            .cmp(&block[q2])
            .then_with(|| self.row(q1).cmp(self.row(q2)))
    }

    #[inline]
    pub fn are_neq(&self, block: &[u32], q1: usize, q2: usize) -> bool {
        block[q1] != block[q2] || self.row(q1) != self.row(q2)
    }
}

/// `signature[q][a] = block[δ(q, a)]`.
pub fn make_signature(dfa: &Dfa, block: &[u32]) -> SignatureTable {
    let mut table = SignatureTable {
        n: dfa.num_states(),
        k: dfa.alphabet_size(),
        cells: vec![0; dfa.num_states() * dfa.alphabet_size()],
    };
    fill_signature(dfa, block, &mut table);
    table
}

fn fill_signature(dfa: &Dfa, block: &[u32], table: &mut SignatureTable) {
    let k = table.k;
    if k == 0 {
        return;
    }
    table
        .cells
        .par_chunks_mut(k)
        .enumerate()
        .for_each(|(q, sig)| {
            for (a, slot) in sig.iter_mut().enumerate() {
                *slot = block[dfa.delta(a)[q] as usize];
            }
        });
}

pub fn sort_pr(dfa: &Dfa, limits: &Limits) -> Result<(Partition, RunStats), MinimizeError> {
    sort_pr_traced(dfa, limits, |_, _| {})
}

/// [`sort_pr`] with `observe` called on the block labels after every
/// iteration.
pub fn sort_pr_traced<F>(
    dfa: &Dfa,
    limits: &Limits,
    mut observe: F,
) -> Result<(Partition, RunStats), MinimizeError>
where
    F: FnMut(u64, &[u32]),
{
    let clock = Deadline::start(limits.timeout);
    let n = dfa.num_states();
    let single_class = dfa.num_accepting() == 0 || dfa.num_accepting() == n;
    let mut block: Vec<u32> = dfa
        .accepting_mask()
        .iter()
        .map(|&acc| u32::from(!acc && !single_class))
        .collect();
    let mut num_blocks = if single_class { 1 } else { 2 };
    let mut state: Vec<StateId> = (0..n as StateId).collect();
    let mut signature = make_signature(dfa, &block);
    let scatter: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(0)).collect();
    let mut iterations = 0u64;
    loop {
        clock.check(iterations)?;
        iterations += 1;

        fill_signature(dfa, &block, &mut signature);
        let (sig, blk) = (&signature, &block);
        par_sort(&mut state, |&x, &y| sig.compare(blk, x as usize, y as usize));
        let marks = adjacent_diff(&state, |&x, &y| sig.are_neq(blk, x as usize, y as usize));
        let new_block = inclusive_scan(&marks);

        state
            .par_iter()
            .zip(new_block.par_iter())
            .for_each(|(&q, &b)| scatter[q as usize].store(b, Relaxed));
        block
            .par_iter_mut()
            .zip(scatter.par_iter())
            .for_each(|(b, s)| *b = s.load(Relaxed));
        observe(iterations, &block);

        let count = new_block.last().map_or(0, |&b| b as usize + 1);
        if count == num_blocks {
            break;
        }
        num_blocks = count;
    }
    let peak = (n * (4 * 5) + signature.cells.len() * 4) as u64;
    Ok((canonicalize(&block), RunStats::ok(iterations, &clock, peak)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bit_splitter, chain_dfa, fib_dfa, random_dfa};
    use crate::oracle::{moore_oracle, moore_with_stats};
    use crate::partition::partitions_equal;
    use proptest::prelude::*;

    #[test]
    fn chain4_signature() {
        let chain = chain_dfa(4);
        let block = [1, 1, 1, 0];
        let sig = make_signature(&chain, &block);
        let column: Vec<u32> = (0..4).map(|q| sig.row(q)[0]).collect();
        assert_eq!(column, [1, 1, 0, 0]);
    }

    #[test]
    fn empty_alphabet_keys_on_block_only() {
        let b1 = bit_splitter(1);
        let sig = make_signature(&b1, &[1, 0]);
        assert_eq!((sig.num_states(), sig.alphabet_size()), (2, 0));
        assert!(sig.row(0).is_empty());
        assert_eq!(sig.compare(&[1, 0], 0, 1), Ordering::Greater);
        let (p, stats) = sort_pr(&b1, &Limits::unlimited()).unwrap();
        assert_eq!((p.num_blocks(), stats.iterations), (2, 1));
    }

    #[test]
    fn signature_after_two_rounds_matches_recomputation() {
        let dfa = fib_dfa(6);
        let mut blocks = Vec::new();
        sort_pr_traced(&dfa, &Limits::unlimited(), |_, b| blocks.push(b.to_vec())).unwrap();
        let after_two = &blocks[1];
        let table = make_signature(&dfa, after_two);
        for q in 0..dfa.num_states() {
            let succ = dfa.delta(0)[q] as usize;
            assert_eq!(table.row(q), &[after_two[succ]]);
        }
    }

    #[test]
    fn all_accepting() {
        let (p, stats) = sort_pr(&random_dfa(30, 2, 9, 1.0), &Limits::unlimited()).unwrap();
        assert_eq!((p.num_blocks(), stats.iterations), (1, 1));
    }

    #[test]
    fn fibonacci_and_bit_splitters() {
        for n in 5..=10 {
            let dfa = fib_dfa(n);
            let (p, stats) = sort_pr(&dfa, &Limits::unlimited()).unwrap();
            assert!(p.is_discrete());
            assert_eq!(stats.iterations, dfa.num_states() as u64 - 1);
        }
        // one pass per letter of the longest shortest distinguishing word,
        // plus the stable pass; the reference implementation counts the same
        for n in 3..=10 {
            let dfa = bit_splitter(n);
            let (p, stats) = sort_pr(&dfa, &Limits::unlimited()).unwrap();
            assert_eq!(p.num_blocks(), 1 << n);
            assert_eq!(stats.iterations, moore_with_stats(&dfa).1.iterations, "B_{n}");
        }
    }

    #[test]
    fn comparator_is_a_strict_weak_order() {
        let dfa = random_dfa(25, 2, 4, 0.5);
        let block: Vec<u32> = (0..25).map(|q| (q % 3) as u32).collect();
        let sig = make_signature(&dfa, &block);
        let less = |x, y| sig.compare(&block, x, y) == Ordering::Less;
        for x in 0..25 {
            assert!(!less(x, x));
            for y in 0..25 {
                assert_eq!(sig.are_neq(&block, x, y), less(x, y) || less(y, x));
                for z in 0..25 {
                    if less(x, y) && less(y, z) {
                        assert!(less(x, z));
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn refines_by_full_keys(n in 1usize..60, k in 1usize..4, seed: u64, acc in 0.0f64..=1.0) {
            let dfa = random_dfa(n, k, seed, acc);
            let mut trace: Vec<Vec<u32>> = Vec::new();
            let (p, _) = sort_pr_traced(&dfa, &Limits::unlimited(), |_, b| trace.push(b.to_vec())).unwrap();
            prop_assert!(partitions_equal(&p, &moore_oracle(&dfa)).unwrap());

            let mut prev: Vec<u32> = dfa.accepting_mask().iter().map(|&a| u32::from(!a)).collect();
            let mut counts = vec![canonicalize(&prev).num_blocks()];
            for next in &trace {
                let sig = make_signature(&dfa, &prev);
                for x in 0..n {
                    for y in 0..n {
                        let same_key = prev[x] == prev[y] && sig.row(x) == sig.row(y);
                        prop_assert_eq!(same_key, next[x] == next[y]);
                    }
                }
                counts.push(canonicalize(next).num_blocks());
                prev = next.clone();
            }
            // strictly increasing until the final pass
            let last = counts.len() - 1;
            prop_assert!(counts[..last].windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(counts[last], counts[last - 1]);
        }
    }
}
