//! Folding systems over regular languages.
//!
//! A folding system pairs a *core* regular language over Σ with a
//! *procedure* regular language over Γ = {u, d}. Each procedure word
//! drives a fold of an equal-length core word — `u` prepends the next
//! symbol to the result, `d` appends it — and the system's language is
//! the set of all such folds. This crate provides:
//!
//! * the folding operation itself, with its permutation view and inverse
//!   ([`folding`]);
//! * regular-language machinery: a regex front-end, canonical total DFAs,
//!   and right-linear grammars ([`automata`]);
//! * compilation of a folding system into an equivalent linear grammar by
//!   a product construction over nonterminal pairs, plus trimming,
//!   bounded enumeration, and `O(n²)`-time membership
//!   ([`linear_grammar`]);
//! * a brute-force bounded oracle and bounded equivalence reports
//!   ([`fsystem`]);
//! * separation tooling: a linear language that no small folding system
//!   generates, an exhaustive bounded refuter certifying that fact,
//!   synchronized pumping decompositions, and a union non-closure
//!   demonstration ([`properties`]).
//!
//! ```
//! use foldlang::folding::{fold, DirectionWord};
//! use foldlang::automata::{compile_regex, Alphabet};
//! use foldlang::fsystem::FSystem;
//!
//! let dirs: DirectionWord = "uddudd".parse().unwrap();
//! assert_eq!(fold("abcabc", &dirs).unwrap(), "aabcbc");
//!
//! let gamma = Alphabet::directions();
//! let phi = FSystem::new(
//!     compile_regex("(abc)*", None).unwrap(),
//!     compile_regex("(udd)*", Some(&gamma)).unwrap(),
//! )
//! .unwrap();
//! let grammar = phi.to_linear_grammar().unwrap();
//! assert!(grammar.contains("aaabcbcbc"));
//! assert_eq!(
//!     phi.bounded_language(6).unwrap(),
//!     grammar.enumerate(6).unwrap()
//! );
//! ```

pub mod automata;
pub mod error;
pub mod folding;
pub mod fsystem;
pub mod linear_grammar;
pub mod properties;

pub use automata::{compile_regex, length_filter, Alphabet, Dfa, RightLinearGrammar, Symbol};
pub use error::{Error, Result};
pub use folding::{fold, fold_permutation, unfold, Direction, DirectionWord, FoldPermutation};
pub use fsystem::{
    bounded_equiv, verify_start_pairs, EquivReport, FSystem, InterchangeReport, StartPairReport,
    DEFAULT_BRUTE_CAP,
};
pub use linear_grammar::{product_construct, LinearGrammar, ProductNonterminal};
pub use properties::{
    balance_check, pump_decompose, refute_bounded, separation_language, union_demo,
    PumpDecomposition, RefuterConfig, RefuterOutcome, UnionReport, Verdict,
};

pub use automata::DEFAULT_ENUM_CAP;
