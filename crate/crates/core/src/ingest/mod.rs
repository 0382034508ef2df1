//! Getting automata in and out: the textual LTS interchange format, subset
//! construction with sink completion, and the DFA / partition file formats.

mod aut;
mod format;
mod powerset;

pub use aut::{parse_lts, write_lts};
pub use format::{read_dfa, read_partition, write_dfa, write_partition, FORMAT_VERSION};
pub use powerset::{
    complete, determinize, determinize_with_budget, lts_to_dfa, PartialDfa,
    DEFAULT_SUBSET_BUDGET,
};
