//! Bounded enumeration of a linear grammar's language.
//!
//! Words are built in strata of increasing length. For a given length,
//! rules with at least one terminal consume strictly shorter words of
//! their inner nonterminal, so the only same-length dependencies are the
//! bare unit rules `A → B`; those are resolved by a precomputed closure.
//! Two prunes keep the search small: a nonterminal's words are only
//! tracked up to `max_len` minus the cheapest terminal context wrapped
//! around it on any path from the start symbol, and rules whose inner
//! nonterminal cannot finish within budget are skipped via minimal yield
//! lengths.

use std::collections::BTreeSet;

use super::LinearGrammar;
use crate::error::{Error, Result};

const INFINITY: usize = usize::MAX / 2;

pub fn enumerate_by_length(
    grammar: &LinearGrammar,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Vec<String>>> {
    if max_len > cap {
        return Err(Error::CapExceeded {
            requested: max_len,
            cap,
        });
    }
    let n = grammar.nonterminal_names().len();

    // Minimal yield: length of the shortest terminal word derivable from
    // each nonterminal (INFINITY when nonproductive).
    let mut min_yield = vec![INFINITY; n];
    loop {
        let mut changed = false;
        for rule in grammar.rules() {
            let candidate = match rule.inner {
                None => rule.terminal_len(),
                Some(inner) => min_yield[inner].saturating_add(rule.terminal_len()),
            };
            if candidate < min_yield[rule.lhs] {
                min_yield[rule.lhs] = candidate;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Minimal terminal context from the start symbol down to each
    // nonterminal.
    let mut min_context = vec![INFINITY; n];
    min_context[grammar.start()] = 0;
    loop {
        let mut changed = false;
        for rule in grammar.rules() {
            if let Some(inner) = rule.inner {
                let candidate = min_context[rule.lhs].saturating_add(rule.terminal_len());
                if candidate < min_context[inner] {
                    min_context[inner] = candidate;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // Unit closure: unit_sources[b] lists every a with a ⇒* b through bare
    // unit rules (a = b included).
    let mut unit_reach: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            let mut seen = vec![false; n];
            seen[a] = true;
            let mut stack = vec![a];
            while let Some(x) = stack.pop() {
                for rule in grammar.rules_of(x) {
                    if let Some(inner) = rule.inner {
                        if rule.terminal_len() == 0 && !seen[inner] {
                            seen[inner] = true;
                            stack.push(inner);
                        }
                    }
                }
            }
            seen
        })
        .collect();
    // Invert so a stratum can be closed in one pass.
    let mut unit_sources: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, row) in unit_reach.iter_mut().enumerate() {
        for (b, reach) in row.iter().enumerate() {
            if *reach {
                unit_sources[b].push(a);
            }
        }
    }

    let budget: Vec<usize> = (0..n)
        .map(|a| max_len.saturating_sub(min_context[a].min(INFINITY)))
        .collect();

    // words[a][len]
    let mut words: Vec<Vec<BTreeSet<String>>> = vec![vec![BTreeSet::new(); max_len + 1]; n];
    for len in 0..=max_len {
        let mut stratum: Vec<BTreeSet<String>> = vec![BTreeSet::new(); n];
        for rule in grammar.rules() {
            if min_context[rule.lhs] >= INFINITY || len > budget[rule.lhs] {
                continue;
            }
            let context = rule.terminal_len();
            match rule.inner {
                None => {
                    if context == len {
                        stratum[rule.lhs].insert(rule.prefix.clone());
                    }
                }
                Some(inner) => {
                    if context == 0 || context > len || min_yield[inner] + context > len {
                        continue;
                    }
                    for inner_word in &words[inner][len - context] {
                        stratum[rule.lhs]
                            .insert(format!("{}{}{}", rule.prefix, inner_word, rule.suffix));
                    }
                }
            }
        }
        // Close the stratum under unit rules.
        for b in 0..n {
            if stratum[b].is_empty() {
                continue;
            }
            let donated = stratum[b].clone();
            for &a in &unit_sources[b] {
                if a != b && len <= budget[a] {
                    words[a][len].extend(donated.iter().cloned());
                }
            }
            words[b][len].extend(donated);
        }
    }

    Ok(words[grammar.start()]
        .iter()
        .map(|set| set.iter().cloned().collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use crate::linear_grammar::{GrammarBuilder, LinearGrammar};

    fn anbn_cn() -> LinearGrammar {
        // {aⁿ (bc)ⁿ}
        let mut b = GrammarBuilder::new("S");
        b.rule("S", "", None, "");
        b.rule("S", "a", Some("S"), "bc");
        b.finish().unwrap()
    }

    #[test]
    fn enumerates_by_length_then_lexicographically() {
        let g = anbn_cn();
        assert_eq!(
            g.enumerate(7).unwrap(),
            vec!["".to_string(), "abc".to_string(), "aabcbc".to_string()]
        );
    }

    #[test]
    fn empty_grammar() {
        let g = LinearGrammar::parse("start S\n").unwrap();
        assert!(g.enumerate(10).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let g = anbn_cn();
        assert!(g.enumerate(25).is_err());
        assert!(g.enumerate_with_cap(25, 30).is_ok());
    }

    #[test]
    fn unit_rules_are_closed_within_a_stratum() {
        let g = LinearGrammar::parse("start S\nS -> A | B\nA -> a A | a\nB -> b\n").unwrap();
        assert_eq!(
            g.enumerate(2).unwrap(),
            vec!["a".to_string(), "b".to_string(), "aa".to_string()]
        );
    }

    #[test]
    fn cyclic_unit_rules_terminate() {
        let g = LinearGrammar::parse("start S\nS -> T | a\nT -> S\n").unwrap();
        assert_eq!(g.enumerate(3).unwrap(), vec!["a".to_string()]);
    }
}
