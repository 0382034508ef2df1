use crate::dfa::Dfa;
use crate::error::PartitionError;
use crate::partition::Partition;

/// Collapses each block of `partition` into one state.
///
/// The partition has to be transition-consistent (members of a block move
/// into a common block on every letter) and must not mix accepting with
/// non-accepting states; it does not have to be the coarsest such partition.
pub fn quotient(dfa: &Dfa, partition: &Partition) -> Result<Dfa, PartitionError> {
    let n = dfa.num_states();
    if partition.len() != n {
        return Err(PartitionError::WrongSize {
            partition: partition.len(),
            dfa: n,
        });
    }
    let blocks = partition.num_blocks();
    let mut rep = vec![usize::MAX; blocks];
    for q in 0..n {
        let b = partition.block_of(q) as usize;
        if rep[b] == usize::MAX {
            rep[b] = q;
        }
    }
    for q in 0..n {
        let block = partition.block_of(q);
        let r = rep[block as usize];
        if dfa.is_accepting(q as u32) != dfa.is_accepting(r as u32) {
            return Err(PartitionError::MixedAcceptance { p: r, q, block });
        }
        for letter in 0..dfa.alphabet_size() {
            let row = dfa.delta(letter);
            if partition.block_of(row[q] as usize) != partition.block_of(row[r] as usize) {
                return Err(PartitionError::Inconsistent {
                    p: r,
                    q,
                    block,
                    letter,
                });
            }
        }
    }
    let delta = dfa
        .rows()
        .iter()
        .map(|row| rep.iter().map(|&r| partition.block_of(row[r] as usize)).collect())
        .collect();
    let accepting = rep.iter().map(|&r| dfa.is_accepting(r as u32)).collect();
    let initial = partition.block_of(dfa.initial() as usize);
    Ok(Dfa::new(blocks, delta, accepting, initial).expect("block labels are in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::chain_dfa;
    use crate::oracle::moore_oracle;
    use crate::partition::canonicalize;

    #[test]
    fn identity_partition_copies() {
        let chain = chain_dfa(10);
        let q = quotient(&chain, &Partition::discrete(10)).unwrap();
        assert_eq!(q, chain);
        // the oracle partition of the chain is the identity
        assert_eq!(quotient(&chain, &moore_oracle(&chain)).unwrap(), chain);
    }

    #[test]
    fn all_accepting_collapses_to_a_loop() {
        let dfa = Dfa::new(2, vec![vec![0, 1]], vec![true, true], 0).unwrap();
        let q = quotient(&dfa, &moore_oracle(&dfa)).unwrap();
        assert_eq!(q.num_states(), 1);
        assert_eq!(q.delta(0), &[0]);
        assert!(q.is_accepting(0));
    }

    #[test]
    fn rejects_inconsistent_partitions() {
        let chain = chain_dfa(4);
        // 0 -> 1 and 1 -> 2 land in different blocks
        let bad = canonicalize(&[0, 0, 1, 2]);
        assert!(matches!(
            quotient(&chain, &bad),
            Err(PartitionError::Inconsistent { p: 0, q: 1, .. })
        ));
        let mixed = canonicalize(&[0, 1, 2, 2]);
        assert!(matches!(
            quotient(&chain, &mixed),
            Err(PartitionError::MixedAcceptance { .. })
        ));
        assert!(matches!(
            quotient(&chain, &Partition::discrete(3)),
            Err(PartitionError::WrongSize { .. })
        ));
    }
}
