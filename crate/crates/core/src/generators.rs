//! Benchmark families: Fibonacci ring automata, bit-splitters, the
//! single-letter chain, and seeded random automata.
//!
//! Random instances use ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! so equal parameters always give equal automata within one build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dfa::{Dfa, StateId};
use crate::lts::{Lts, LtsTransition};

/// A finite word over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibWord(pub Vec<u8>);

impl FibWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Display for FibWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.iter().try_for_each(|b| write!(f, "{b}"))
    }
}

/// `w_0 = 1`, `w_1 = 0`, `w_{n+1} = w_n w_{n-1}`.
pub fn fib_word(n: usize) -> FibWord {
    let (mut prev, mut cur) = (vec![1u8], vec![0u8]);
    if n == 0 {
        return FibWord(prev);
    }
    for _ in 1..n {
        let mut next = cur.clone();
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    FibWord(cur)
}

/// Unary ring over the positions of `w_n`: state `i` steps to
/// `(i + 1) mod |w_n|` and accepts iff `w_n[i] = 1`. Requires `n >= 2`.
pub fn fib_dfa(n: usize) -> Dfa {
    assert!(n >= 2, "fib_dfa needs n >= 2, got {n}");
    let word = fib_word(n);
    let len = word.len();
    let ring = (0..len).map(|i| ((i + 1) % len) as StateId).collect();
    let accepting = word.bits().iter().map(|&b| b == 1).collect();
    Dfa::new(len, vec![ring], accepting, 0).expect("ring is well formed")
}

/// Bit-splitter `B_n` on `2^n` states over `n - 1` letters.
///
/// States are `n`-bit strings read as binary numbers, most significant bit
/// first. Letter `a_m` (index `m - 1`) acts on the low `m + 1` bits `bσ`:
/// if the leftmost bit of `σ` is set, they become `b̄` followed by `m`
/// zeros, otherwise the state is unchanged. Higher bits are never touched.
/// States with the top bit set accept; the initial state is `0^n`.
pub fn bit_splitter(n: usize) -> Dfa {
    assert!((1..=31).contains(&n), "bit_splitter needs 1 <= n <= 31, got {n}");
    let size = 1usize << n;
    let delta = (1..n)
        .map(|m| {
            let sigma_top = 1usize << (m - 1);
            let b = 1usize << m;
            let low = (b << 1) - 1;
            (0..size)
                .map(|q| {
                    if q & sigma_top != 0 {
                        ((q & !low) | (!q & b)) as StateId
                    } else {
                        q as StateId
                    }
                })
                .collect()
        })
        .collect();
    let accepting = (0..size).map(|q| q >> (n - 1) == 1).collect();
    Dfa::new(size, delta, accepting, 0).expect("bit-splitter is well formed")
}

/// `q_0 -a-> q_1 -a-> ... -a-> q_{len-1}`, the last state accepting and
/// looping. Accepts `a^j` iff `j >= len - 1`.
pub fn chain_dfa(len: usize) -> Dfa {
    assert!(len >= 2, "chain_dfa needs len >= 2, got {len}");
    let row = (0..len).map(|i| (i + 1).min(len - 1) as StateId).collect();
    Dfa::from_accepting_list(len, vec![row], &[(len - 1) as StateId], 0)
        .expect("chain is well formed")
}

/// Uniformly random complete DFA with initial state 0; every state accepts
/// with probability `accept_prob`.
pub fn random_dfa(n: usize, k: usize, seed: u64, accept_prob: f64) -> Dfa {
    assert!(n >= 1 && k >= 1, "random_dfa needs n >= 1 and k >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = (0..k)
        .map(|_| (0..n).map(|_| rng.random_range(0..n) as StateId).collect())
        .collect();
    let accepting = (0..n).map(|_| rng.random_bool(accept_prob)).collect();
    Dfa::new(n, delta, accepting, 0).expect("random targets are in range")
}

/// Random LTS with `num_states` states, labels `l0..l{num_labels-1}` and
/// `num_transitions` edges (duplicates possible). Initial state 0.
pub fn random_lts(num_states: usize, num_labels: usize, num_transitions: usize, seed: u64) -> Lts {
    assert!(num_states >= 1 && num_labels >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let transitions = (0..num_transitions)
        .map(|_| LtsTransition {
            source: rng.random_range(0..num_states) as StateId,
            label: rng.random_range(0..num_labels),
            target: rng.random_range(0..num_states) as StateId,
        })
        .collect();
    Lts {
        num_states,
        initial: 0,
        labels: (0..num_labels).map(|l| format!("l{l}")).collect(),
        transitions,
    }
}
