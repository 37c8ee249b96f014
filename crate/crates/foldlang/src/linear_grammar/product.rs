//! The product construction: from right-linear grammars for the reversed
//! core and procedure languages to a linear grammar for the folding
//! system's language.
//!
//! Given normal-form right-linear `g1` over Σ and `g2` over Γ = {u, d},
//! the result ranges over nonterminal pairs `(A, B)` with start
//! `(S1, S2)` and exactly three rule families:
//!
//! * `(A,B) → a(C,D)` for every `A → aC` in `g1` and `B → uD` in `g2`,
//! * `(A,B) → (C,D)a` for every `A → aC` in `g1` and `B → dD` in `g2`,
//! * `(A,B) → ε` for every `A → ε` in `g1` and `B → ε` in `g2`.

use std::fmt;

use super::{GrammarBuilder, LinearGrammar};
use crate::automata::{Dfa, RightLinearGrammar};
use crate::error::{Error, Result};

/// A nonterminal of the product grammar, written `(A,B)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductNonterminal {
    pub left: String,
    pub right: String,
}

impl fmt::Display for ProductNonterminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// Builds the raw product grammar over all of `V1 × V2`; nothing is
/// trimmed. `g2` must range over a subset of `{u, d}`.
pub fn product_construct(
    g1: &RightLinearGrammar,
    g2: &RightLinearGrammar,
) -> Result<LinearGrammar> {
    for ch in g2.terminals().chars() {
        if ch != 'u' && ch != 'd' {
            return Err(Error::ProcAlphabet { symbol: ch });
        }
    }
    let pair_name = |a: usize, b: usize| {
        ProductNonterminal {
            left: g1.name(a).to_string(),
            right: g2.name(b).to_string(),
        }
        .to_string()
    };
    let mut builder = GrammarBuilder::new(&pair_name(g1.start(), g2.start()));
    for a in 0..g1.nonterminal_names().len() {
        for b in 0..g2.nonterminal_names().len() {
            builder.nonterminal(&pair_name(a, b));
        }
    }
    // Folding up keeps the symbol on the left of the growing word, folding
    // down moves it to the right.
    for step1 in g1.steps() {
        for step2 in g2.steps() {
            let lhs = pair_name(step1.from, step2.from);
            let rhs = pair_name(step1.to, step2.to);
            match step2.symbol {
                'u' => builder.rule(&lhs, &step1.symbol.to_string(), Some(&rhs), ""),
                'd' => builder.rule(&lhs, "", Some(&rhs), &step1.symbol.to_string()),
                _ => unreachable!("procedure alphabet was checked"),
            }
        }
    }
    for a in g1.finals() {
        for b in g2.finals() {
            builder.rule(&pair_name(a, b), "", None, "");
        }
    }
    builder.finish()
}

/// Compiles a folding system, presented as core and procedure automata,
/// into a trimmed linear grammar for its language.
pub fn compile_automata(core: &Dfa, procedure: &Dfa) -> Result<LinearGrammar> {
    Ok(compile_automata_raw(core, procedure)?.trim())
}

/// As [`compile_automata`] without the final trim, exposing the full
/// nonterminal-pair space.
pub fn compile_automata_raw(core: &Dfa, procedure: &Dfa) -> Result<LinearGrammar> {
    for ch in procedure.alphabet().chars() {
        if ch != 'u' && ch != 'd' {
            return Err(Error::ProcAlphabet { symbol: ch });
        }
    }
    let g1 = RightLinearGrammar::from_dfa(&core.reverse(), "S");
    let g2 = RightLinearGrammar::from_dfa(&procedure.reverse(), "T");
    product_construct(&g1, &g2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile_regex, Alphabet};

    fn example_pair() -> (RightLinearGrammar, RightLinearGrammar) {
        let cba = compile_regex("(cba)*", None).unwrap();
        let dirs = Alphabet::directions();
        let ddu = compile_regex("(ddu)*", Some(&dirs)).unwrap();
        (
            RightLinearGrammar::from_dfa(&cba, "S"),
            RightLinearGrammar::from_dfa(&ddu, "T"),
        )
    }

    #[test]
    fn product_rule_shapes() {
        let (g1, g2) = example_pair();
        let product = product_construct(&g1, &g2).unwrap();
        assert_eq!(product.nonterminal_names().len(), 9);
        for rule in product.rules() {
            let shape_up = rule.prefix.chars().count() == 1
                && rule.inner.is_some()
                && rule.suffix.is_empty();
            let shape_down = rule.prefix.is_empty()
                && rule.inner.is_some()
                && rule.suffix.chars().count() == 1;
            let shape_eps = rule.prefix.is_empty() && rule.inner.is_none() && rule.suffix.is_empty();
            assert!(shape_up || shape_down || shape_eps, "unexpected rule shape");
        }
    }

    #[test]
    fn trimmed_product_is_the_three_state_cycle() {
        let (g1, g2) = example_pair();
        let trimmed = product_construct(&g1, &g2).unwrap().trim();
        assert_eq!(trimmed.nonterminal_names().len(), 3);
        assert_eq!(trimmed.rules().len(), 4);
        assert_eq!(trimmed.start_name(), "(S0,T0)");
        assert_eq!(
            trimmed.enumerate(7).unwrap(),
            vec!["".to_string(), "abc".to_string(), "aabcbc".to_string()]
        );
    }

    #[test]
    fn epsilon_times_epsilon() {
        let eps = compile_regex("()", None).unwrap();
        let g = RightLinearGrammar::from_dfa(&eps, "S");
        let h = RightLinearGrammar::from_dfa(&eps, "T");
        let product = product_construct(&g, &h).unwrap();
        assert_eq!(product.enumerate(4).unwrap(), vec!["".to_string()]);
    }

    #[test]
    fn rejects_foreign_procedure_alphabet() {
        let (g1, _) = example_pair();
        let bad = RightLinearGrammar::from_dfa(&compile_regex("(xy)*", None).unwrap(), "T");
        assert!(matches!(
            product_construct(&g1, &bad),
            Err(Error::ProcAlphabet { .. })
        ));
    }

    #[test]
    fn compile_matches_hand_folding() {
        let core = compile_regex("(abc)*", None).unwrap();
        let dirs = Alphabet::directions();
        let procedure = compile_regex("(uud)*", Some(&dirs)).unwrap();
        let g = compile_automata(&core, &procedure).unwrap();
        let words = g.enumerate(6).unwrap();
        assert!(words.contains(&"".to_string()));
        assert!(words.contains(&"bac".to_string()));
    }
}
