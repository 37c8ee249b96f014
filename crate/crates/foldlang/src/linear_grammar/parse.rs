//! Parser for the grammar file format.
//!
//! ```text
//! # comment lines start with '#'
//! start S
//! S -> a S b c | a '#' b c
//! ```
//!
//! The first non-comment line is `start <Name>`. Rule lines read
//! `<Name> -> tok tok … | tok … | …` with whitespace-separated tokens. A
//! token is a nonterminal exactly when it appears as some rule's
//! left-hand side (the start name counts as declared even without rules);
//! any other token is a terminal and must be one character, optionally
//! single-quoted. Quoting is required for `'|'`, `'-'`, and `'#'`. A bare
//! `eps` alone denotes the empty right-hand side.

use super::{GrammarBuilder, LinearGrammar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Bare(String),
    Quoted(char),
}

struct Line {
    offset: usize,
    tokens: Vec<(usize, Token)>,
}

pub fn parse_grammar(text: &str) -> Result<LinearGrammar> {
    let lines = tokenize(text)?;
    let mut iter = lines.iter();

    let header = iter.next().ok_or_else(|| Error::Parse {
        position: 0,
        message: "expected a 'start <Name>' line".to_string(),
    })?;
    let start_name = parse_header(header)?;

    // First pass: collect left-hand sides so tokens can be classified.
    let rule_lines: Vec<&Line> = iter.collect();
    let mut lhs_names: Vec<String> = vec![start_name.clone()];
    for line in &rule_lines {
        let (offset, name) = rule_lhs(line)?;
        if name.chars().count() == 0 {
            return Err(Error::Parse {
                position: offset,
                message: "empty rule name".to_string(),
            });
        }
        if !lhs_names.contains(&name) {
            lhs_names.push(name);
        }
    }

    let mut builder = GrammarBuilder::new(&start_name);
    for name in &lhs_names {
        builder.nonterminal(name);
    }
    for line in &rule_lines {
        parse_rule_line(line, &lhs_names, &mut builder)?;
    }
    builder.finish()
}

fn parse_header(line: &Line) -> Result<String> {
    match line.tokens.as_slice() {
        [(_, Token::Bare(kw)), (_, Token::Bare(name))] if kw == "start" => Ok(name.clone()),
        _ => Err(Error::Parse {
            position: line.offset,
            message: "the first line must be 'start <Name>'".to_string(),
        }),
    }
}

fn rule_lhs(line: &Line) -> Result<(usize, String)> {
    match line.tokens.as_slice() {
        [(offset, Token::Bare(name)), (_, Token::Bare(arrow)), ..] if arrow == "->" => {
            Ok((*offset, name.clone()))
        }
        _ => Err(Error::Parse {
            position: line.offset,
            message: "expected '<Name> -> …'".to_string(),
        }),
    }
}

fn parse_rule_line(line: &Line, lhs_names: &[String], builder: &mut GrammarBuilder) -> Result<()> {
    let (_, lhs) = rule_lhs(line)?;
    let body = &line.tokens[2..];
    let mut alternative: Vec<&(usize, Token)> = Vec::new();
    let mut flush = |alt: &[&(usize, Token)], end_offset: usize| -> Result<()> {
        if alt.is_empty() {
            return Err(Error::Parse {
                position: end_offset,
                message: "empty alternative (use 'eps' for the empty word)".to_string(),
            });
        }
        let mut prefix = String::new();
        let mut suffix = String::new();
        let mut inner: Option<String> = None;
        if alt.len() == 1 {
            if let (_, Token::Bare(word)) = alt[0] {
                if word == "eps" {
                    builder.rule(&lhs, "", None, "");
                    return Ok(());
                }
            }
        }
        for (offset, token) in alt {
            match token {
                Token::Bare(word) if word == "eps" => {
                    return Err(Error::Parse {
                        position: *offset,
                        message: "'eps' must stand alone in its alternative".to_string(),
                    });
                }
                Token::Bare(word) if lhs_names.iter().any(|n| n == word) => {
                    if inner.is_some() {
                        return Err(Error::NotLinear {
                            nonterminal: lhs.clone(),
                        });
                    }
                    inner = Some(word.clone());
                }
                Token::Bare(word) => {
                    let mut chars = word.chars();
                    let (first, rest) = (chars.next(), chars.next());
                    match (first, rest) {
                        (Some(ch), None) => {
                            if matches!(ch, '-' | '#') {
                                return Err(Error::Parse {
                                    position: *offset,
                                    message: format!("quote the terminal as '{ch}'"),
                                });
                            }
                            push_terminal(&mut prefix, &mut suffix, &inner, ch);
                        }
                        _ => {
                            return Err(Error::Parse {
                                position: *offset,
                                message: format!(
                                    "'{word}' is not a declared nonterminal and terminals are single characters"
                                ),
                            });
                        }
                    }
                }
                Token::Quoted(ch) => push_terminal(&mut prefix, &mut suffix, &inner, *ch),
            }
        }
        builder.rule(&lhs, &prefix, inner.as_deref(), &suffix);
        Ok(())
    };

    for entry in body {
        if matches!(&entry.1, Token::Bare(word) if word == "|") {
            flush(&alternative, entry.0)?;
            alternative.clear();
        } else {
            alternative.push(entry);
        }
    }
    let end = line
        .tokens
        .last()
        .map(|(offset, _)| *offset)
        .unwrap_or(line.offset);
    flush(&alternative, end)
}

fn push_terminal(prefix: &mut String, suffix: &mut String, inner: &Option<String>, ch: char) {
    if inner.is_some() {
        suffix.push(ch);
    } else {
        prefix.push(ch);
    }
}

fn tokenize(text: &str) -> Result<Vec<Line>> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split('\n') {
        let line_offset = offset;
        offset += raw.len() + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = Vec::new();
        let chars: Vec<(usize, char)> = raw.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (col, ch) = chars[i];
            if ch.is_whitespace() {
                i += 1;
                continue;
            }
            if ch == '\'' {
                // Quoted terminal: exactly one character between quotes.
                let inner = chars.get(i + 1).map(|&(_, c)| c);
                let close = chars.get(i + 2).map(|&(_, c)| c);
                match (inner, close) {
                    (Some(c), Some('\'')) => {
                        tokens.push((line_offset + col, Token::Quoted(c)));
                        i += 3;
                    }
                    _ => {
                        return Err(Error::Parse {
                            position: line_offset + col,
                            message: "quoted terminals are exactly one character, as in 'x'"
                                .to_string(),
                        });
                    }
                }
                continue;
            }
            let begin = i;
            while i < chars.len() && !chars[i].1.is_whitespace() && chars[i].1 != '\'' {
                i += 1;
            }
            let word: String = chars[begin..i].iter().map(|&(_, c)| c).collect();
            tokens.push((line_offset + chars[begin].0, Token::Bare(word)));
        }
        lines.push(Line {
            offset: line_offset,
            tokens,
        });
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_branch_linear_grammar() {
        let g = LinearGrammar::parse("start S\nS -> a S b c | a '#' b c\n").unwrap();
        assert_eq!(g.rules().len(), 2);
        assert_eq!(g.terminals().to_string(), "#abc");
        assert!(!g.is_right_linear());
        let with_inner = &g.rules()[0];
        assert_eq!(with_inner.prefix, "a");
        assert_eq!(with_inner.suffix, "bc");
        let terminal_only = &g.rules()[1];
        assert_eq!(terminal_only.prefix, "a#bc");
        assert_eq!(terminal_only.inner, None);
    }

    #[test]
    fn epsilon_grammar() {
        let g = LinearGrammar::parse("start S\nS -> eps\n").unwrap();
        assert_eq!(g.rules().len(), 1);
        assert_eq!(g.rules()[0].prefix, "");
        assert!(g.terminals().is_empty());
    }

    #[test]
    fn two_nonterminals_rejected() {
        let err = LinearGrammar::parse("start S\nS -> a S S\n").unwrap_err();
        assert!(matches!(err, Error::NotLinear { .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# heading\n\nstart S\n# middle\nS -> a\n";
        let g = LinearGrammar::parse(text).unwrap();
        assert_eq!(g.rules().len(), 1);
    }

    #[test]
    fn start_without_rules_is_the_empty_language() {
        let g = LinearGrammar::parse("start S\n").unwrap();
        assert_eq!(g.nonterminal_names(), &["S"]);
        assert!(g.rules().is_empty());
    }

    #[test]
    fn unquoted_hash_rejected() {
        let err = LinearGrammar::parse("start S\nS -> a # b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn multichar_unknown_token_rejected() {
        let err = LinearGrammar::parse("start S\nS -> a T1 b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn eps_must_stand_alone() {
        let err = LinearGrammar::parse("start S\nS -> a eps\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn alternatives_merge_across_lines() {
        let g = LinearGrammar::parse("start S\nS -> a\nS -> b\n").unwrap();
        assert_eq!(g.rules().len(), 2);
    }

    #[test]
    fn missing_header() {
        let err = LinearGrammar::parse("S -> a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 0, .. }));
    }
}
