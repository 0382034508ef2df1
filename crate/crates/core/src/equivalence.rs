use std::collections::{HashSet, VecDeque};

use crate::dfa::Dfa;
use crate::error::AlphabetMismatch;

/// Decides `L(a) == L(b)` by exploring the product automaton from the pair
/// of initial states. Letters are matched by index.
pub fn language_equivalent(a: &Dfa, b: &Dfa) -> Result<bool, AlphabetMismatch> {
    Ok(distinguishing_word(a, b)?.is_none())
}

/// A shortest word accepted by exactly one of the automata, if any.
pub fn distinguishing_word(a: &Dfa, b: &Dfa) -> Result<Option<Vec<usize>>, AlphabetMismatch> {
    if a.alphabet_size() != b.alphabet_size() {
        return Err(AlphabetMismatch {
            left: a.alphabet_size(),
            right: b.alphabet_size(),
        });
    }
    let start = (a.initial(), b.initial());
    let mut parent = std::collections::HashMap::new();
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        if a.is_accepting(p) != b.is_accepting(q) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(&(prev, letter)) = parent.get(&cur) {
                word.push(letter);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for letter in 0..a.alphabet_size() {
            let next = (a.step(p, letter), b.step(q, letter));
            if seen.insert(next) {
                parent.insert(next, (pair, letter));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
