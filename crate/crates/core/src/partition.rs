use std::collections::HashMap;

use crate::error::PartitionError;

/// A partition of `0..n` into blocks, always held in canonical form: block
/// labels are `0..num_blocks` and label `b` first occurs before label `b + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block: Vec<u32>,
    num_blocks: usize,
}

impl Partition {
    /// Every state in its own block.
    pub fn discrete(n: usize) -> Partition {
        Partition {
            block: (0..n as u32).collect(),
            num_blocks: n,
        }
    }

    /// All states in one block (empty if `n == 0`).
    pub fn trivial(n: usize) -> Partition {
        Partition {
            block: vec![0; n],
            num_blocks: usize::from(n > 0),
        }
    }

    pub fn block(&self) -> &[u32] {
        &self.block
    }

    #[inline]
    pub fn block_of(&self, state: usize) -> u32 {
        self.block[state]
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks == self.block.len()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.block
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut image = vec![u32::MAX; self.num_blocks];
        self.block
            .iter()
            .zip(&coarser.block)
            .all(|(&fine, &coarse)| {
                let slot = &mut image[fine as usize];
                if *slot == u32::MAX {
                    *slot = coarse;
                }
                *slot == coarse
            })
    }

    /// Members of each block, in ascending state order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_blocks];
        for (q, &b) in self.block.iter().enumerate() {
            classes[b as usize].push(q);
        }
        classes
    }
}

/// Relabels arbitrary block labels by order of first occurrence.
pub fn canonicalize(raw: &[u32]) -> Partition {
    let max = raw.iter().copied().max().unwrap_or(0) as usize;
    let mut block = Vec::with_capacity(raw.len());
    let mut next = 0u32;
    if max <= 4 * raw.len() + 64 {
        let mut seen = vec![u32::MAX; max + 1];
        for &label in raw {
            let slot = &mut seen[label as usize];
            if *slot == u32::MAX {
                *slot = next;
                next += 1;
            }
            block.push(*slot);
        }
    } else {
        let mut seen = HashMap::new();
        for &label in raw {
            let id = *seen.entry(label).or_insert_with(|| {
                next += 1;
                next - 1
            });
            block.push(id);
        }
    }
    Partition {
        block,
        num_blocks: next as usize,
    }
}

pub fn partitions_equal(p: &Partition, q: &Partition) -> Result<bool, PartitionError> {
    if p.len() != q.len() {
        return Err(PartitionError::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(p.block == q.block)
}

/// A pair of states grouped together by one partition and separated by the
/// other, or `None` when the partitions agree. Lengths must match.
pub fn disagreement_witness(p: &Partition, q: &Partition) -> Option<(usize, usize)> {
    assert_eq!(p.len(), q.len(), "partitions of different sizes");
    // first member of each block
    let firsts = |part: &Partition| {
        let mut first = vec![usize::MAX; part.num_blocks];
        for (s, &b) in part.block.iter().enumerate() {
            if first[b as usize] == usize::MAX {
                first[b as usize] = s;
            }
        }
        first
    };
    let (fp, fq) = (firsts(p), firsts(q));
    (0..p.len()).find_map(|s| {
        let rp = fp[p.block[s] as usize];
        let rq = fq[q.block[s] as usize];
        // the smaller representative shares a block with `s` in one partition only
        (rp != rq).then(|| (rp.min(rq), s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_occurrence_relabeling() {
        let p = canonicalize(&[5, 5, 2, 5, 2]);
        assert_eq!(p.block(), &[0, 0, 1, 0, 1]);
        assert_eq!(p.num_blocks(), 2);
        assert_eq!(canonicalize(&[0, 1, 2]).block(), &[0, 1, 2]);
        let single = canonicalize(&[9]);
        assert_eq!((single.block(), single.num_blocks()), (&[0u32][..], 1));
    }

    #[test]
    fn large_labels_take_the_hash_path() {
        let p = canonicalize(&[u32::MAX - 1, 7, u32::MAX - 1, 1_000_000]);
        assert_eq!(p.block(), &[0, 1, 0, 2]);
    }

    #[test]
    fn equality_of_groupings() {
        assert!(partitions_equal(&canonicalize(&[5, 5, 2]), &canonicalize(&[1, 1, 7])).unwrap());
        assert!(!partitions_equal(&canonicalize(&[0, 0, 1]), &canonicalize(&[0, 1, 1])).unwrap());
        assert_eq!(
            partitions_equal(&Partition::trivial(2), &Partition::trivial(3)),
            Err(PartitionError::LengthMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn witness_points_at_a_split_pair() {
        let p = canonicalize(&[0, 0, 1, 1]);
        let q = canonicalize(&[0, 0, 1, 2]);
        let (a, b) = disagreement_witness(&p, &q).unwrap();
        assert_eq!((a, b), (2, 3));
        assert_eq!(p.block_of(a) == p.block_of(b), !(q.block_of(a) == q.block_of(b)));
        assert_eq!(disagreement_witness(&p, &p), None);
    }

    #[test]
    fn refinement() {
        let coarse = canonicalize(&[0, 0, 1, 1]);
        let fine = canonicalize(&[0, 1, 2, 2]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::discrete(4).refines(&coarse));
        assert!(coarse.refines(&Partition::trivial(4)));
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(raw in prop::collection::vec(0u32..20, 0..60)) {
            let once = canonicalize(&raw);
            let twice = canonicalize(once.block());
            prop_assert_eq!(&once, &twice);
            // equal raw labels <-> equal canonical labels
            for i in 0..raw.len() {
                for j in 0..raw.len() {
                    prop_assert_eq!(raw[i] == raw[j], once.block_of(i) == once.block_of(j));
                }
            }
        }

        #[test]
        fn witness_exists_iff_unequal(
            a in prop::collection::vec(0u32..4, 1..30),
            b_seed in prop::collection::vec(0u32..4, 30),
        ) {
            let b: Vec<u32> = b_seed[..a.len()].to_vec();
            let (p, q) = (canonicalize(&a), canonicalize(&b));
            let equal = partitions_equal(&p, &q).unwrap();
            match disagreement_witness(&p, &q) {
                None => prop_assert!(equal),
                Some((x, y)) => {
                    prop_assert!(!equal);
                    prop_assert_ne!(p.block_of(x) == p.block_of(y), q.block_of(x) == q.block_of(y));
                }
            }
        }
    }
}
