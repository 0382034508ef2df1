use std::fmt;

use crate::error::DfaError;

/// Dense state identifier. States of an `n`-state automaton are `0..n`.
pub type StateId = u32;

/// A complete deterministic finite automaton.
///
/// Transitions are stored letter-major: `delta(a)[q]` is the successor of `q`
/// on letter `a`. Letters are plain indices `0..alphabet_size`.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    num_states: usize,
    delta: Vec<Vec<StateId>>,
    accepting: Vec<bool>,
    initial: StateId,
}

impl Dfa {
    /// Builds a DFA after checking that every transition target, the initial
    /// state and the acceptance mask fit the state count.
    pub fn new(
        num_states: usize,
        delta: Vec<Vec<StateId>>,
        accepting: Vec<bool>,
        initial: StateId,
    ) -> Result<Dfa, DfaError> {
        if num_states == 0 {
            return Err(DfaError::NoStates);
        }
        if num_states > u32::MAX as usize {
            return Err(DfaError::TooManyStates(num_states));
        }
        for (letter, row) in delta.iter().enumerate() {
            if row.len() != num_states {
                return Err(DfaError::RowLength {
                    letter,
                    len: row.len(),
                    expected: num_states,
                });
            }
            if let Some((state, &target)) = row
                .iter()
                .enumerate()
                .find(|(_, &t)| t as usize >= num_states)
            {
                return Err(DfaError::TargetOutOfRange {
                    letter,
                    state,
                    target,
                    num_states,
                });
            }
        }
        if accepting.len() != num_states {
            return Err(DfaError::AcceptingLength {
                len: accepting.len(),
                expected: num_states,
            });
        }
        if initial as usize >= num_states {
            return Err(DfaError::InitialOutOfRange {
                initial,
                num_states,
            });
        }
        Ok(Dfa {
            num_states,
            delta,
            accepting,
            initial,
        })
    }

    /// Like [`Dfa::new`], with the accepting set given as a list of state ids.
    pub fn from_accepting_list(
        num_states: usize,
        delta: Vec<Vec<StateId>>,
        accepting: &[StateId],
        initial: StateId,
    ) -> Result<Dfa, DfaError> {
        let mut mask = vec![false; num_states];
        for &q in accepting {
            match mask.get_mut(q as usize) {
                Some(slot) => *slot = true,
                None => {
                    return Err(DfaError::AcceptingOutOfRange {
                        state: q,
                        num_states,
                    })
                }
            }
        }
        Dfa::new(num_states, delta, mask, initial)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet_size(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// The transition row of `letter`, indexed by source state.
    pub fn delta(&self, letter: usize) -> &[StateId] {
        &self.delta[letter]
    }

    pub fn rows(&self) -> &[Vec<StateId>] {
        &self.delta
    }

    #[inline]
    pub fn step(&self, state: StateId, letter: usize) -> StateId {
        self.delta[letter][state as usize]
    }

    #[inline]
    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting[state as usize]
    }

    pub fn accepting_mask(&self) -> &[bool] {
        &self.accepting
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &acc)| acc)
            .map(|(q, _)| q as StateId)
    }

    pub fn num_accepting(&self) -> usize {
        self.accepting.iter().filter(|&&acc| acc).count()
    }

    /// Follows `word` from `from` and returns the state reached.
    pub fn run_from(&self, from: StateId, word: &[usize]) -> StateId {
        word.iter().fold(from, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.is_accepting(self.run_from(self.initial, word))
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dfa")
            .field("num_states", &self.num_states)
            .field("alphabet_size", &self.alphabet_size())
            .field("initial", &self.initial)
            .field("accepting", &self.accepting_states().collect::<Vec<_>>())
            .field("delta", &self.delta)
            .finish()
    }
}
