use crate::dfa::StateId;

/// One labelled edge of an [`Lts`]; `label` indexes [`Lts::labels`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LtsTransition {
    pub source: StateId,
    pub label: usize,
    pub target: StateId,
}

/// A labelled transition system. It may be nondeterministic and incomplete,
/// and duplicate transitions are kept as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    pub num_states: usize,
    pub initial: StateId,
    /// Interned label names, in order of first appearance.
    pub labels: Vec<String>,
    pub transitions: Vec<LtsTransition>,
}

impl Lts {
    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    /// Outgoing edges grouped per state: `out[q]` lists `(label, target)`.
    pub fn successors(&self) -> Vec<Vec<(usize, StateId)>> {
        let mut out = vec![Vec::new(); self.num_states];
        for t in &self.transitions {
            out[t.source as usize].push((t.label, t.target));
        }
        out
    }

    /// Whether `word` labels some path starting in the initial state.
    ///
    /// Straightforward nondeterministic simulation with a current state set;
    /// used to cross-check determinization.
    pub fn has_path(&self, word: &[usize]) -> bool {
        let succ = self.successors();
        let mut current = vec![false; self.num_states];
        current[self.initial as usize] = true;
        for &letter in word {
            let mut next = vec![false; self.num_states];
            let mut any = false;
            for (q, _) in current.iter().enumerate().filter(|(_, &on)| on) {
                for &(label, target) in &succ[q] {
                    if label == letter {
                        next[target as usize] = true;
                        any = true;
                    }
                }
            }
            if !any {
                return false;
            }
            current = next;
        }
        true
    }
}
