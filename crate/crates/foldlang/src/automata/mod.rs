//! Regular-language machinery: alphabets, the regex front-end, NFAs and
//! canonical total DFAs, and right-linear grammars with conversions in
//! both directions.
//!
//! Regular languages may be presented as a regex, a right-linear grammar,
//! or an automaton; the canonical internal representation is the minimal
//! total [`Dfa`].

mod alphabet;
mod dfa;
mod nfa;
mod regex;
mod rlg;

pub use alphabet::{canonical_sort, canonical_word_cmp, Alphabet, Symbol};
pub use dfa::{length_filter, Dfa, StateId, DEFAULT_ENUM_CAP};
pub use nfa::Nfa;
pub use regex::{compile_regex, RegexAst};
pub use rlg::{RightLinearGrammar, RlgStep};
