//! The separating language and its balance fact.
//!
//! `separation_language` is a linear language over `{a,…,f,#}` whose words
//! are `aⁿ#(bc)ⁿ` and `(de)ⁿ#fⁿ` for `n ≥ 1`. Every word has exactly one
//! `#`, length `3n + 1`, and nearly balanced sides around the marker — a
//! combination the bounded refuter can show no small folding system
//! reproduces.

use crate::linear_grammar::LinearGrammar;

const GRAMMAR_TEXT: &str = "\
start S
S -> S1 | S2
S1 -> a S1 b c | a '#' b c
S2 -> d e S2 f | d e '#' f
";

/// The two-branch marker language described above.
pub fn separation_language() -> LinearGrammar {
    LinearGrammar::parse(GRAMMAR_TEXT).expect("the built-in grammar parses")
}

/// `true` iff `word` contains exactly one `#` and, split as `u1 # u2`,
/// satisfies `|u1| ≤ 2|u2|` and `|u2| ≤ 2|u1|`.
pub fn balance_check(word: &str) -> bool {
    let mut parts = word.split('#');
    let (Some(u1), Some(u2), None) = (parts.next(), parts.next(), parts.next()) else {
        return false;
    };
    let l1 = u1.chars().count();
    let l2 = u2.chars().count();
    l1 <= 2 * l2 && l2 <= 2 * l1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_members() {
        let g = separation_language();
        assert_eq!(
            g.enumerate(7).unwrap(),
            vec![
                "a#bc".to_string(),
                "de#f".to_string(),
                "aa#bcbc".to_string(),
                "dede#ff".to_string(),
            ]
        );
    }

    #[test]
    fn membership() {
        let g = separation_language();
        assert!(g.contains("a#bc"));
        assert!(g.contains("de#f"));
        assert!(!g.contains("abc"));
        assert!(!g.contains("a#bcbc"));
    }

    #[test]
    fn balance_examples() {
        assert!(balance_check("aa#bcbc"));
        assert!(!balance_check("abc"));
        assert!(!balance_check("aaaa#b"));
        assert!(!balance_check("a#b#c"));
        assert!(balance_check("#"), "empty sides satisfy both inequalities");
        assert!(balance_check("a#b"));
    }

    #[test]
    fn word_facts_up_to_thirteen() {
        let g = separation_language();
        let words = g.enumerate(13).unwrap();
        assert!(!words.is_empty());
        for w in &words {
            let len = w.chars().count();
            assert_eq!(len % 3, 1, "{w}");
            assert!(len >= 4, "{w}");
            assert_eq!(w.matches('#').count(), 1, "{w}");
            assert!(balance_check(w), "{w}");
        }
    }
}
