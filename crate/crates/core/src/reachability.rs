use std::collections::VecDeque;

use crate::dfa::{Dfa, StateId};

/// Reachability flags from the initial state, breadth-first over all letters.
pub fn reachable_states(dfa: &Dfa) -> Vec<bool> {
    let mut seen = vec![false; dfa.num_states()];
    let mut queue = VecDeque::from([dfa.initial()]);
    seen[dfa.initial() as usize] = true;
    while let Some(q) = queue.pop_front() {
        for a in 0..dfa.alphabet_size() {
            let t = dfa.step(q, a);
            if !seen[t as usize] {
                seen[t as usize] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Drops states not reachable from the initial state. Survivors keep their
/// relative order and are renumbered densely.
pub fn remove_unreachable(dfa: &Dfa) -> Dfa {
    let keep = reachable_states(dfa);
    let mut new_id = vec![StateId::MAX; dfa.num_states()];
    let mut count = 0;
    for (q, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
        new_id[q] = count;
        count += 1;
    }
    if count as usize == dfa.num_states() {
        return dfa.clone();
    }
    let delta = dfa
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&t, _)| new_id[t as usize])
                .collect()
        })
        .collect();
    let accepting = dfa
        .accepting_mask()
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&a, _)| a)
        .collect();
    Dfa::new(
        count as usize,
        delta,
        accepting,
        new_id[dfa.initial() as usize],
    )
    .expect("restriction to reachable states is closed under delta")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain_dfa, random_dfa};

    #[test]
    fn fully_reachable_is_unchanged() {
        let chain = chain_dfa(10);
        assert_eq!(remove_unreachable(&chain), chain);
    }

    #[test]
    fn self_loops_leave_only_the_initial_state() {
        let dfa = Dfa::from_accepting_list(3, vec![vec![0, 1, 2]], &[1], 0).unwrap();
        let out = remove_unreachable(&dfa);
        assert_eq!(out.num_states(), 1);
        assert_eq!(out.delta(0), &[0]);
        assert!(!out.is_accepting(0));
    }

    #[test]
    fn renumbering_preserves_order() {
        // 2 -> 0 -> 2, state 1 unreachable; start at 2
        let dfa = Dfa::from_accepting_list(3, vec![vec![2, 1, 0]], &[0], 2).unwrap();
        let out = remove_unreachable(&dfa);
        assert_eq!(out.num_states(), 2);
        assert_eq!(out.initial(), 1);
        assert_eq!(out.delta(0), &[1, 0]);
        assert_eq!(out.accepting_states().collect::<Vec<_>>(), [0]);
    }

    /// Independent reachability by repeated relaxation until nothing changes.
    fn fixpoint_count(dfa: &Dfa) -> usize {
        let mut seen = vec![false; dfa.num_states()];
        seen[dfa.initial() as usize] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..dfa.num_states() {
                if seen[q] {
                    for a in 0..dfa.alphabet_size() {
                        let t = dfa.delta(a)[q] as usize;
                        if !seen[t] {
                            seen[t] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        seen.into_iter().filter(|&s| s).count()
    }

    #[test]
    fn random_dfa_matches_fixpoint_reachability() {
        let dfa = random_dfa(50, 2, 7, 0.5);
        let expected = fixpoint_count(&dfa);
        assert_eq!(remove_unreachable(&dfa).num_states(), expected);
        // sparse graphs leave states behind more often
        for seed in 0..50 {
            let dfa = random_dfa(40, 1, seed, 0.5);
            assert_eq!(remove_unreachable(&dfa).num_states(), fixpoint_count(&dfa));
        }
    }
}
