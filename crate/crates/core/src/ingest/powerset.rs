use std::collections::{HashMap, VecDeque};

use crate::dfa::{Dfa, StateId};
use crate::error::DeterminizeError;
use crate::lts::Lts;

/// Default cap on the number of subset states.
pub const DEFAULT_SUBSET_BUDGET: usize = 1 << 22;

/// Deterministic but possibly incomplete automaton produced by subset
/// construction. Every state accepts; state 0 is `{initial}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDfa {
    pub labels: Vec<String>,
    /// `delta[label][state]`, `None` where no member has that label.
    pub delta: Vec<Vec<Option<StateId>>>,
    /// The LTS states making up each subset state, sorted.
    pub subsets: Vec<Vec<StateId>>,
}

impl PartialDfa {
    pub fn num_states(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }
}

pub fn determinize(lts: &Lts) -> Result<PartialDfa, DeterminizeError> {
    determinize_with_budget(lts, DEFAULT_SUBSET_BUDGET)
}

/// Subset construction from `{lts.initial}`. Subsets are numbered in
/// breadth-first discovery order, labels scanned in index order; empty
/// successor sets produce no transition.
pub fn determinize_with_budget(lts: &Lts, budget: usize) -> Result<PartialDfa, DeterminizeError> {
    let k = lts.num_labels();
    let succ = lts.successors();

    let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut subsets: Vec<Vec<StateId>> = Vec::new();
    let mut delta: Vec<Vec<Option<StateId>>> = vec![Vec::new(); k];
    let mut queue = VecDeque::new();

    let start = vec![lts.initial];
    ids.insert(start.clone(), 0);
    subsets.push(start);
    queue.push_back(0usize);

    let mut buckets: Vec<Vec<StateId>> = vec![Vec::new(); k];
    while let Some(current) = queue.pop_front() {
        for &q in &subsets[current] {
            for &(label, target) in &succ[q as usize] {
                buckets[label].push(target);
            }
        }
        for (label, bucket) in buckets.iter_mut().enumerate() {
            if bucket.is_empty() {
                delta[label].push(None);
                continue;
            }
            bucket.sort_unstable();
            bucket.dedup();
            let target = match ids.get(bucket.as_slice()) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= budget {
                        return Err(DeterminizeError::StateBudgetExceeded { budget });
                    }
                    let id = subsets.len() as StateId;
                    ids.insert(bucket.clone(), id);
                    subsets.push(bucket.clone());
                    queue.push_back(id as usize);
                    id
                }
            };
            delta[label].push(Some(target));
            bucket.clear();
        }
    }
    Ok(PartialDfa {
        labels: lts.labels.clone(),
        delta,
        subsets,
    })
}

/// Completes a subset automaton: missing transitions go to a fresh
/// non-accepting sink (numbered last) that loops on every label. No sink is
/// added when nothing is missing.
pub fn complete(partial: &PartialDfa) -> Dfa {
    let n = partial.num_states();
    let sink = if partial.is_complete() { None } else { Some(n as StateId) };
    let total = n + usize::from(sink.is_some());
    let delta = partial
        .delta
        .iter()
        .map(|row| {
            let mut full: Vec<StateId> = row
                .iter()
                .map(|t| t.or(sink).expect("sink exists when a transition is missing"))
                .collect();
            full.extend(sink);
            full
        })
        .collect();
    let mut accepting = vec![true; n];
    if sink.is_some() {
        accepting.push(false);
    }
    Dfa::new(total, delta, accepting, 0).expect("subset ids are in range")
}

/// Determinize and complete in one go.
pub fn lts_to_dfa(lts: &Lts, budget: usize) -> Result<Dfa, DeterminizeError> {
    determinize_with_budget(lts, budget).map(|p| complete(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_lts;
    use crate::ingest::parse_lts;
    use crate::lts::LtsTransition;

    fn lts(num_states: usize, labels: &[&str], edges: &[(u32, usize, u32)]) -> Lts {
        Lts {
            num_states,
            initial: 0,
            labels: labels.iter().map(|s| s.to_string()).collect(),
            transitions: edges
                .iter()
                .map(|&(source, label, target)| LtsTransition {
                    source,
                    label,
                    target,
                })
                .collect(),
        }
    }

    #[test]
    fn deterministic_complete_input_is_reproduced() {
        let input = lts(2, &["a"], &[(0, 0, 1), (1, 0, 0)]);
        let p = determinize(&input).unwrap();
        assert_eq!(p.subsets, [vec![0], vec![1]]);
        assert_eq!(p.delta, [vec![Some(1), Some(0)]]);
        let dfa = complete(&p);
        assert_eq!(dfa.num_states(), 2);
        assert_eq!(dfa.num_accepting(), 2);
    }

    #[test]
    fn nondeterminism_creates_union_subsets() {
        let input = lts(3, &["a"], &[(0, 0, 1), (0, 0, 2)]);
        let p = determinize(&input).unwrap();
        assert_eq!(p.subsets[1], [1, 2]);
    }

    #[test]
    fn hand_expanded_subset_table() {
        // (0,a,1) (0,a,2) (1,b,0) (2,b,2), expanded by hand:
        //   {0}   -a-> {1,2}  -b-> none
        //   {1,2} -a-> none   -b-> {0,2}
        //   {0,2} -a-> {1,2}  -b-> {2}
        //   {2}   -a-> none   -b-> {2}
        let input = lts(3, &["a", "b"], &[(0, 0, 1), (0, 0, 2), (1, 1, 0), (2, 1, 2)]);
        let p = determinize(&input).unwrap();
        assert_eq!(p.subsets, [vec![0], vec![1, 2], vec![0, 2], vec![2]]);
        assert_eq!(
            p.delta,
            [
                vec![Some(1), None, Some(1), None],
                vec![None, Some(2), Some(3), Some(3)]
            ]
        );
        let dfa = complete(&p);
        assert_eq!(dfa.num_states(), 5);
        assert_eq!(dfa.delta(0), &[1, 4, 1, 4, 4]);
        assert_eq!(dfa.delta(1), &[4, 2, 3, 3, 4]);
        assert_eq!(dfa.accepting_states().collect::<Vec<_>>(), [0, 1, 2, 3]);
    }

    #[test]
    fn no_sink_when_complete() {
        let input = lts(1, &["a"], &[(0, 0, 0)]);
        let dfa = complete(&determinize(&input).unwrap());
        assert_eq!(dfa.num_states(), 1);
    }

    #[test]
    fn single_state_without_transitions_gets_a_sink() {
        let input = lts(1, &["a"], &[]);
        let dfa = complete(&determinize(&input).unwrap());
        assert_eq!(dfa.num_states(), 2);
        assert!(dfa.is_accepting(0) && !dfa.is_accepting(1));
        assert_eq!(dfa.delta(0), &[1, 1]);
    }

    /// All words over `k` letters of length at most `max_len`.
    fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut all = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max_len {
            frontier = frontier
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..k).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            all.extend(frontier.iter().cloned());
        }
        all
    }

    #[test]
    fn partial_chain_accepts_exactly_its_paths() {
        // 0 -a-> 1 -b-> 2, plus 1 -a-> 1
        let text = "des (0, 3, 3)\n(0, \"a\", 1)\n(1, \"b\", 2)\n(1, \"a\", 1)\n";
        let input = parse_lts(text).unwrap();
        let dfa = lts_to_dfa(&input, DEFAULT_SUBSET_BUDGET).unwrap();
        for w in words(2, 6) {
            assert_eq!(dfa.accepts(&w), input.has_path(&w), "{w:?}");
        }
    }

    #[test]
    fn output_is_deterministic_and_budgeted() {
        let input = random_lts(20, 3, 60, 5);
        assert_eq!(determinize(&input).unwrap(), determinize(&input).unwrap());
        let full = determinize(&input).unwrap().num_states();
        assert!(matches!(
            determinize_with_budget(&input, full - 1),
            Err(DeterminizeError::StateBudgetExceeded { .. })
        ));
        assert!(determinize_with_budget(&input, full).is_ok());
    }
}
