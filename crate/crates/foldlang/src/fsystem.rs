//! Folding systems and their language.
//!
//! A folding system pairs a core language over Σ with a procedure
//! language over Γ = {u, d}; its language is every fold of a core word by
//! an equal-length direction word. Two routes into that language live
//! here: a brute-force bounded enumeration straight from the definition
//! (the oracle everything else is checked against) and membership through
//! the compiled linear grammar.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::folding::{fold, fold_permutation, DirectionWord};
use crate::linear_grammar::{compile_automata, compile_automata_raw, product_construct, LinearGrammar};

/// Default bound for the brute-force oracle; pair enumeration is
/// exponential in the length.
pub const DEFAULT_BRUTE_CAP: usize = 14;

/// Number of words kept verbatim in difference reports.
const REPORT_TRUNCATE: usize = 20;

/// A folding system: a core automaton over Σ and a procedure automaton
/// over a subset of Γ = {u, d}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSystem {
    core: Dfa,
    procedure: Dfa,
}

impl FSystem {
    pub fn new(core: Dfa, procedure: Dfa) -> Result<Self> {
        for ch in procedure.alphabet().chars() {
            if ch != 'u' && ch != 'd' {
                return Err(Error::ProcAlphabet { symbol: ch });
            }
        }
        Ok(FSystem { core, procedure })
    }

    pub fn core(&self) -> &Dfa {
        &self.core
    }

    pub fn procedure(&self) -> &Dfa {
        &self.procedure
    }

    /// Every word of the system's language up to `max_len`, straight from
    /// the definition: fold each same-length pair of core and procedure
    /// words, deduplicate, and order canonically.
    pub fn bounded_language(&self, max_len: usize) -> Result<Vec<String>> {
        self.bounded_language_with_cap(max_len, DEFAULT_BRUTE_CAP)
    }

    pub fn bounded_language_with_cap(&self, max_len: usize, cap: usize) -> Result<Vec<String>> {
        Ok(self
            .words_by_length_with_cap(max_len, cap)?
            .into_iter()
            .flatten()
            .collect())
    }

    /// The brute-force language grouped by word length (index = length).
    pub fn words_by_length_with_cap(
        &self,
        max_len: usize,
        cap: usize,
    ) -> Result<Vec<Vec<String>>> {
        if max_len > cap {
            return Err(Error::CapExceeded {
                requested: max_len,
                cap,
            });
        }
        let mut out = Vec::with_capacity(max_len + 1);
        for n in 0..=max_len {
            out.push(self.fold_all_of_length(n));
        }
        Ok(out)
    }

    fn fold_all_of_length(&self, n: usize) -> Vec<String> {
        if !self.core.has_word_of_length(n) || !self.procedure.has_word_of_length(n) {
            return Vec::new();
        }
        let core_words = self.core.words_with_length(n);
        let proc_words = self.procedure.words_with_length(n);
        let mut set = BTreeSet::new();
        for v in &proc_words {
            let dirs: DirectionWord = v.parse().expect("procedure words are direction words");
            let perm = fold_permutation(&dirs);
            for w in &core_words {
                set.insert(perm.apply(w).expect("equal lengths"));
            }
        }
        set.into_iter().collect()
    }

    /// The compiled, trimmed linear grammar of the system's language.
    pub fn to_linear_grammar(&self) -> Result<LinearGrammar> {
        compile_automata(&self.core, &self.procedure)
    }

    /// The raw compiled grammar over the full nonterminal-pair space.
    pub fn to_linear_grammar_raw(&self) -> Result<LinearGrammar> {
        compile_automata_raw(&self.core, &self.procedure)
    }

    /// Membership, decided through the compiled grammar.
    pub fn contains(&self, word: &str) -> Result<bool> {
        Ok(self.to_linear_grammar()?.contains(word))
    }

    /// Demonstrates the interchange property: when `w1, w2` are core words
    /// and `v1, v2` procedure words, all of one length, the cross folds
    /// `fold(w1, v2)` and `fold(w2, v1)` land in the language as well.
    pub fn interchange(
        &self,
        w1: &str,
        v1: &DirectionWord,
        w2: &str,
        v2: &DirectionWord,
    ) -> Result<InterchangeReport> {
        let lens = [
            w1.chars().count(),
            v1.len(),
            w2.chars().count(),
            v2.len(),
        ];
        if lens.iter().any(|&l| l != lens[0]) {
            return Err(Error::Precondition {
                message: format!(
                    "all four inputs must share one length, got {}, {}, {}, {}",
                    lens[0], lens[1], lens[2], lens[3]
                ),
            });
        }
        for (word, label) in [(w1, "w1"), (w2, "w2")] {
            if !self.core.accepts(word) {
                return Err(Error::Precondition {
                    message: format!("{label} = {word:?} is not in the core language"),
                });
            }
        }
        for (dirs, label) in [(v1, "v1"), (v2, "v2")] {
            if !self.procedure.accepts(&dirs.to_string()) {
                return Err(Error::Precondition {
                    message: format!("{label} = {dirs} is not in the procedure language"),
                });
            }
        }
        let report = InterchangeReport {
            straight: [fold(w1, v1)?, fold(w2, v2)?],
            crossed: [fold(w1, v2)?, fold(w2, v1)?],
        };
        debug_assert!(self.contains(&report.crossed[0])?);
        debug_assert!(self.contains(&report.crossed[1])?);
        Ok(report)
    }
}

/// The four folded words of an interchange demonstration. Both `crossed`
/// entries belong to the system's language by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterchangeReport {
    /// `fold(w1, v1)` and `fold(w2, v2)`.
    pub straight: [String; 2],
    /// `fold(w1, v2)` and `fold(w2, v1)`.
    pub crossed: [String; 2],
}

/// Outcome of a bounded comparison between a folding system and a linear
/// grammar. `missing` holds system words the grammar lacks, `extra`
/// grammar words the system lacks; both lists are truncated to
/// [`REPORT_TRUNCATE`] entries with exact totals alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub max_len: usize,
    pub missing: Vec<String>,
    pub missing_total: usize,
    pub extra: Vec<String>,
    pub extra_total: usize,
    /// Core-alphabet symbols the grammar does not declare.
    pub fsystem_only_symbols: Vec<char>,
    /// Grammar terminals outside the core alphabet.
    pub grammar_only_symbols: Vec<char>,
}

impl EquivReport {
    pub fn equivalent(&self) -> bool {
        self.missing_total == 0 && self.extra_total == 0
    }
}

pub(crate) fn diff_word_lists(
    max_len: usize,
    left: &[Vec<String>],
    right: &[Vec<String>],
) -> (Vec<String>, usize, Vec<String>, usize) {
    let empty = Vec::new();
    let mut missing = Vec::new();
    let mut missing_total = 0;
    let mut extra = Vec::new();
    let mut extra_total = 0;
    for n in 0..=max_len {
        let l: BTreeSet<&String> = left.get(n).unwrap_or(&empty).iter().collect();
        let r: BTreeSet<&String> = right.get(n).unwrap_or(&empty).iter().collect();
        for &w in l.difference(&r) {
            missing_total += 1;
            if missing.len() < REPORT_TRUNCATE {
                missing.push(w.clone());
            }
        }
        for &w in r.difference(&l) {
            extra_total += 1;
            if extra.len() < REPORT_TRUNCATE {
                extra.push(w.clone());
            }
        }
    }
    (missing, missing_total, extra, extra_total)
}

/// Compares the brute-force language of `phi` with the bounded enumeration
/// of `grammar`, over the union alphabet.
pub fn bounded_equiv(phi: &FSystem, grammar: &LinearGrammar, max_len: usize) -> Result<EquivReport> {
    bounded_equiv_with_cap(phi, grammar, max_len, DEFAULT_BRUTE_CAP)
}

pub fn bounded_equiv_with_cap(
    phi: &FSystem,
    grammar: &LinearGrammar,
    max_len: usize,
    cap: usize,
) -> Result<EquivReport> {
    let brute = phi.words_by_length_with_cap(max_len, cap)?;
    let generated = grammar.enumerate_by_length_with_cap(max_len, cap.max(max_len))?;
    let (missing, missing_total, extra, extra_total) =
        diff_word_lists(max_len, &brute, &generated);
    let core_alpha = phi.core().alphabet();
    let grammar_alpha: &Alphabet = grammar.terminals();
    Ok(EquivReport {
        max_len,
        missing,
        missing_total,
        extra,
        extra_total,
        fsystem_only_symbols: core_alpha
            .chars()
            .filter(|&c| !grammar_alpha.contains(c))
            .collect(),
        grammar_only_symbols: grammar_alpha
            .chars()
            .filter(|&c| !core_alpha.contains(c))
            .collect(),
    })
}

/// One start pair's comparison in [`verify_start_pairs`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartPairResult {
    pub left: String,
    pub right: String,
    pub report: EquivReport,
}

/// Results of checking, for every nonterminal pair `(A1, A2)`, that the
/// product grammar restarted at `(A1, A2)` generates exactly the folding
/// system built from the reversed start-variant languages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartPairReport {
    pub max_len: usize,
    pub results: Vec<StartPairResult>,
}

impl StartPairReport {
    pub fn all_equivalent(&self) -> bool {
        self.results.iter().all(|r| r.report.equivalent())
    }

    pub fn failing(&self) -> impl Iterator<Item = &StartPairResult> {
        self.results.iter().filter(|r| !r.report.equivalent())
    }
}

/// Bounded verification that the product construction is sound at every
/// start pair, not just the designated one.
pub fn verify_start_pairs(
    g1: &crate::automata::RightLinearGrammar,
    g2: &crate::automata::RightLinearGrammar,
    max_len: usize,
) -> Result<StartPairReport> {
    if max_len > DEFAULT_BRUTE_CAP {
        return Err(Error::CapExceeded {
            requested: max_len,
            cap: DEFAULT_BRUTE_CAP,
        });
    }
    let product = product_construct(g1, g2)?;
    let mut results = Vec::new();
    for a1 in g1.nonterminal_names() {
        for a2 in g2.nonterminal_names() {
            let core = g1.start_variant(a1)?.to_dfa().reverse();
            let procedure = g2.start_variant(a2)?.to_dfa().reverse();
            let phi = FSystem::new(core, procedure)?;
            let pair = ProductPairName(a1, a2).to_string();
            let restarted = product.start_variant(&pair)?;
            let report = bounded_equiv(&phi, &restarted, max_len)?;
            results.push(StartPairResult {
                left: a1.clone(),
                right: a2.clone(),
                report,
            });
        }
    }
    Ok(StartPairReport { max_len, results })
}

struct ProductPairName<'a>(&'a str, &'a str);

impl std::fmt::Display for ProductPairName<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile_regex, RightLinearGrammar};

    fn system(core: &str, procedure: &str) -> FSystem {
        let dirs = Alphabet::directions();
        FSystem::new(
            compile_regex(core, None).unwrap(),
            compile_regex(procedure, Some(&dirs)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn brute_language_of_the_worked_example() {
        let phi = system("(abc)*", "(udd)*");
        assert_eq!(
            phi.bounded_language(6).unwrap(),
            vec!["".to_string(), "abc".to_string(), "aabcbc".to_string()]
        );
    }

    #[test]
    fn all_down_procedure_is_identity() {
        let core = compile_regex("(ab|b)*", None).unwrap();
        let phi = system("(ab|b)*", "d*");
        for n in 0..=10 {
            assert_eq!(
                phi.bounded_language(n).unwrap(),
                core.enumerate(n).unwrap(),
                "length {n}"
            );
        }
    }

    #[test]
    fn all_up_procedure_reverses() {
        let core = compile_regex("ab|b", None).unwrap();
        let phi = system("ab|b", "u*");
        let mut expect: Vec<String> = core
            .enumerate(8)
            .unwrap()
            .into_iter()
            .map(|w| w.chars().rev().collect())
            .collect();
        crate::automata::canonical_sort(&mut expect);
        assert_eq!(phi.bounded_language(8).unwrap(), expect);
    }

    #[test]
    fn uud_cycle() {
        let phi = system("(edf)*", "(uud)*");
        assert_eq!(
            phi.bounded_language(6).unwrap(),
            vec!["".to_string(), "def".to_string(), "dedeff".to_string()]
        );
    }

    #[test]
    fn membership_through_the_compiled_grammar() {
        let phi = system("(abc)*", "(udd)*");
        assert!(phi.contains("aabcbc").unwrap());
        assert!(!phi.contains("abca").unwrap());
        let bac = system("(abc)*", "(uud)*");
        assert!(bac.contains("bac").unwrap());
    }

    #[test]
    fn rejects_bad_procedure_alphabet() {
        let core = compile_regex("a*", None).unwrap();
        let bad = compile_regex("x*", None).unwrap();
        assert!(matches!(
            FSystem::new(core, bad),
            Err(Error::ProcAlphabet { symbol: 'x' })
        ));
    }

    #[test]
    fn bounded_equiv_on_matching_grammar() {
        let phi = system("(abc)*", "(udd)*");
        let g = phi.to_linear_grammar().unwrap();
        let report = bounded_equiv(&phi, &g, 9).unwrap();
        assert!(report.equivalent(), "{report:?}");
    }

    #[test]
    fn bounded_equiv_flags_extra_words() {
        let phi = system("(abc)*", "(udd)*");
        let other = LinearGrammar::parse(
            "start S\nS -> S1 | S2\nS1 -> a S1 b c | a '#' b c\nS2 -> d e S2 f | d e '#' f\n",
        )
        .unwrap();
        let report = bounded_equiv(&phi, &other, 4).unwrap();
        assert!(!report.equivalent());
        assert!(report.extra.contains(&"a#bc".to_string()));
        assert!(report.missing.contains(&"".to_string()));
        assert!(report.grammar_only_symbols.contains(&'#'));
    }

    #[test]
    fn pipeline_self_consistency() {
        for (core, procedure) in [("(abc)*", "(udd)*"), ("(ab|b)*", "(ud)*"), ("a*", "d*|u*")] {
            let phi = system(core, procedure);
            let g = phi.to_linear_grammar().unwrap();
            let report = bounded_equiv(&phi, &g, 8).unwrap();
            assert!(report.equivalent(), "{core} / {procedure}: {report:?}");
        }
    }

    #[test]
    fn start_pairs_for_the_worked_example() {
        let cba = compile_regex("(cba)*", None).unwrap();
        let dirs = Alphabet::directions();
        let ddu = compile_regex("(ddu)*", Some(&dirs)).unwrap();
        let g1 = RightLinearGrammar::from_dfa(&cba, "S");
        let g2 = RightLinearGrammar::from_dfa(&ddu, "T");
        let report = verify_start_pairs(&g1, &g2, 8).unwrap();
        assert_eq!(report.results.len(), 9);
        assert!(report.all_equivalent(), "{:?}", report.failing().collect::<Vec<_>>());
    }

    #[test]
    fn start_pairs_for_epsilon_grammars() {
        let eps = compile_regex("()", None).unwrap();
        let g1 = RightLinearGrammar::from_dfa(&eps, "S");
        let g2 = RightLinearGrammar::from_dfa(&eps, "T");
        let report = verify_start_pairs(&g1, &g2, 4).unwrap();
        assert_eq!(report.results.len(), 1);
        assert!(report.all_equivalent());
    }

    #[test]
    fn interchange_identical_pairs() {
        let phi = system("(abc)*", "(udd)*");
        let v: DirectionWord = "uddudd".parse().unwrap();
        let report = phi.interchange("abcabc", &v, "abcabc", &v).unwrap();
        assert_eq!(report.crossed, ["aabcbc".to_string(), "aabcbc".to_string()]);
    }

    #[test]
    fn interchange_cross_folds() {
        let phi = system("(abc)*", "(udd)*|(uud)*");
        let v1: DirectionWord = "udd".parse().unwrap();
        let v2: DirectionWord = "uud".parse().unwrap();
        let report = phi.interchange("abc", &v1, "abc", &v2).unwrap();
        assert_eq!(report.crossed, ["bac".to_string(), "abc".to_string()]);
    }

    #[test]
    fn interchange_length_mismatch() {
        let phi = system("(abc)*", "(udd)*");
        let v1: DirectionWord = "udd".parse().unwrap();
        let v2: DirectionWord = "uddudd".parse().unwrap();
        assert!(matches!(
            phi.interchange("abc", &v1, "abcabc", &v2),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn brute_cap() {
        let phi = system("a*", "d*");
        assert!(matches!(
            phi.bounded_language(15),
            Err(Error::CapExceeded { requested: 15, cap: 14 })
        ));
    }
}
