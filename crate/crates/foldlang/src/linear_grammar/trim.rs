//! Useless-symbol elimination: drop nonterminals that derive no terminal
//! string, then drop the ones unreachable from the start symbol.

use super::LinearGrammar;

pub fn trim(grammar: &LinearGrammar) -> LinearGrammar {
    let n = grammar.nonterminal_names().len();

    // Productive fixpoint.
    let mut productive = vec![false; n];
    loop {
        let mut changed = false;
        for rule in grammar.rules() {
            if productive[rule.lhs] {
                continue;
            }
            let ok = match rule.inner {
                None => true,
                Some(inner) => productive[inner],
            };
            if ok {
                productive[rule.lhs] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Reachability through rules whose nonterminals are all productive.
    let mut reachable = vec![false; n];
    reachable[grammar.start()] = true;
    loop {
        let mut changed = false;
        for rule in grammar.rules() {
            if !reachable[rule.lhs] || !productive[rule.lhs] {
                continue;
            }
            if let Some(inner) = rule.inner {
                if productive[inner] && !reachable[inner] {
                    reachable[inner] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let keep: Vec<bool> = (0..n)
        .map(|i| i == grammar.start() || (productive[i] && reachable[i]))
        .collect();

    let mut builder = super::GrammarBuilder::new(grammar.start_name());
    for (i, name) in grammar.nonterminal_names().iter().enumerate() {
        if keep[i] {
            builder.nonterminal(name);
        }
    }
    for rule in grammar.rules() {
        let live = keep[rule.lhs]
            && productive[rule.lhs]
            && reachable[rule.lhs]
            && rule.inner.map_or(true, |i| keep[i] && productive[i]);
        if live {
            builder.rule(
                grammar.name(rule.lhs),
                &rule.prefix,
                rule.inner.map(|i| grammar.name(i)),
                &rule.suffix,
            );
        }
    }
    builder.finish().expect("trimming preserves validity")
}

#[cfg(test)]
mod tests {
    use crate::linear_grammar::{GrammarBuilder, LinearGrammar};

    #[test]
    fn drops_nonproductive_self_loop() {
        let mut b = GrammarBuilder::new("A");
        b.rule("A", "a", Some("A"), "");
        let g = b.finish().unwrap();
        let t = g.trim();
        assert_eq!(t.nonterminal_names(), &["A"]);
        assert!(t.rules().is_empty());
        assert!(t.enumerate(6).unwrap().is_empty());
    }

    #[test]
    fn idempotent_on_trim_grammars() {
        let g = LinearGrammar::parse("start S\nS -> a S b | eps\n").unwrap();
        let once = g.trim();
        assert_eq!(once, g);
        assert_eq!(once.trim(), once);
    }

    #[test]
    fn drops_unreachable_branch() {
        let mut b = GrammarBuilder::new("S");
        b.rule("S", "a", None, "");
        b.rule("U", "b", None, "");
        let g = b.finish().unwrap();
        let t = g.trim();
        assert_eq!(t.nonterminal_names(), &["S"]);
        assert_eq!(t.rules().len(), 1);
    }

    #[test]
    fn bounded_language_is_preserved() {
        let mut b = GrammarBuilder::new("S");
        b.rule("S", "a", Some("S"), "b");
        b.rule("S", "", None, "");
        b.rule("S", "c", Some("D"), ""); // D is nonproductive
        b.rule("D", "c", Some("D"), "");
        let g = b.finish().unwrap();
        let t = g.trim();
        assert_eq!(
            g.enumerate(8).unwrap(),
            t.enumerate(8).unwrap()
        );
        assert_eq!(t.nonterminal_names(), &["S"]);
    }
}
