//! Sequential Moore-style refinement, the reference every parallel
//! algorithm is checked against.

use std::collections::HashMap;

use crate::dfa::Dfa;
use crate::partition::Partition;
use crate::stats::{Deadline, RunStats};

/// Language-equivalence classes of `dfa`'s states.
pub fn moore_oracle(dfa: &Dfa) -> Partition {
    moore_with_stats(dfa).0
}

/// [`moore_oracle`] plus the number of refinement rounds it took
/// (counting the final round that changed nothing).
pub fn moore_with_stats(dfa: &Dfa) -> (Partition, RunStats) {
    let clock = Deadline::start(None);
    let n = dfa.num_states();
    let k = dfa.alphabet_size();

    let raw: Vec<u32> = dfa.accepting_mask().iter().map(|&a| u32::from(!a)).collect();
    let mut part = crate::partition::canonicalize(&raw);
    let mut rounds = 0u64;
    let mut key = Vec::with_capacity(k + 1);
    loop {
        rounds += 1;
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(part.num_blocks() * 2);
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            key.clear();
            key.push(part.block_of(q));
            key.extend((0..k).map(|a| part.block_of(dfa.delta(a)[q] as usize)));
            let fresh = ids.len() as u32;
            // labels are handed out in state order, so the result is canonical
            next.push(*ids.entry(key.clone()).or_insert(fresh));
        }
        let num_blocks = ids.len();
        let stable = num_blocks == part.num_blocks();
        part = crate::partition::canonicalize(&next);
        if stable {
            break;
        }
    }
    let bytes = (n * (k + 2) * 4) as u64;
    (part, RunStats::ok(rounds, &clock, bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain_dfa, fib_dfa};

    #[test]
    fn chain_is_minimal() {
        let p = moore_oracle(&chain_dfa(10));
        assert_eq!(p.num_blocks(), 10);
        assert!(p.is_discrete());
    }

    #[test]
    fn all_accepting_collapses() {
        let dfa = Dfa::new(4, vec![vec![1, 2, 3, 0], vec![0, 0, 1, 1]], vec![true; 4], 0).unwrap();
        assert_eq!(moore_oracle(&dfa).num_blocks(), 1);
    }

    #[test]
    fn fibonacci_automata_are_minimal() {
        let dfa = fib_dfa(10);
        assert_eq!(moore_oracle(&dfa).num_blocks(), dfa.num_states());
    }

    #[test]
    fn merges_duplicate_states() {
        // states 1 and 2 behave identically
        let dfa = Dfa::from_accepting_list(4, vec![vec![1, 3, 3, 3]], &[3], 0).unwrap();
        assert_eq!(moore_oracle(&dfa).block(), &[0, 1, 1, 2]);
    }
}
