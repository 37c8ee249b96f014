//! A small regex dialect for writing down regular languages: literals,
//! grouping, `|`, `*`, `+`, `?`, and backslash escapes. The empty group
//! `()` denotes ε. No character classes, anchors, or bounded repetition.

use std::collections::BTreeSet;

use super::alphabet::{Alphabet, Symbol};
use super::dfa::Dfa;
use super::nfa::Nfa;
use crate::error::{Error, Result};

/// Syntax tree of the regex dialect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexAst {
    /// The empty language. Not reachable from the concrete syntax; kept so
    /// callers can build it programmatically.
    Empty,
    Epsilon,
    Literal(Symbol),
    Concat(Vec<RegexAst>),
    Union(Vec<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    Optional(Box<RegexAst>),
}

impl RegexAst {
    pub fn parse(text: &str) -> Result<RegexAst> {
        let mut parser = Parser {
            chars: text.char_indices().collect(),
            pos: 0,
        };
        let ast = parser.alternation()?;
        if parser.pos < parser.chars.len() {
            let (offset, ch) = parser.chars[parser.pos];
            return Err(Error::Parse {
                position: offset,
                message: format!("unexpected character {ch:?}"),
            });
        }
        Ok(ast)
    }

    /// All literal symbols mentioned anywhere in the tree.
    pub fn literals(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals(&self, out: &mut BTreeSet<char>) {
        match self {
            RegexAst::Empty | RegexAst::Epsilon => {}
            RegexAst::Literal(sym) => {
                out.insert(sym.as_char());
            }
            RegexAst::Concat(children) | RegexAst::Union(children) => {
                for child in children {
                    child.collect_literals(out);
                }
            }
            RegexAst::Star(child) | RegexAst::Plus(child) | RegexAst::Optional(child) => {
                child.collect_literals(out);
            }
        }
    }

    fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new();
        let (start, end) = build_fragment(self, &mut nfa);
        nfa.set_start(start);
        nfa.set_accepting(end);
        nfa
    }
}

const METACHARS: &[char] = &['(', ')', '|', '*', '+', '?', '\\'];

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or_else(|| self.chars.last().map(|&(o, c)| o + c.len_utf8()).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn alternation(&mut self) -> Result<RegexAst> {
        let mut arms = vec![self.concatenation()?];
        while self.peek() == Some('|') {
            self.bump();
            arms.push(self.concatenation()?);
        }
        Ok(if arms.len() == 1 {
            arms.pop().unwrap()
        } else {
            RegexAst::Union(arms)
        })
    }

    fn concatenation(&mut self) -> Result<RegexAst> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' || c == '|' {
                break;
            }
            parts.push(self.postfix()?);
        }
        Ok(match parts.len() {
            0 => RegexAst::Epsilon,
            1 => parts.pop().unwrap(),
            _ => RegexAst::Concat(parts),
        })
    }

    fn postfix(&mut self) -> Result<RegexAst> {
        let mut node = self.atom()?;
        while let Some(c) = self.peek() {
            node = match c {
                '*' => RegexAst::Star(Box::new(node)),
                '+' => RegexAst::Plus(Box::new(node)),
                '?' => RegexAst::Optional(Box::new(node)),
                _ => break,
            };
            self.bump();
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<RegexAst> {
        let offset = self.offset();
        match self.bump() {
            Some('(') => {
                let inner = self.alternation()?;
                if self.bump() != Some(')') {
                    return Err(Error::Parse {
                        position: self.offset(),
                        message: "expected ')'".to_string(),
                    });
                }
                Ok(inner)
            }
            Some('\\') => match self.bump() {
                Some(c) => Ok(RegexAst::Literal(Symbol::new(c)?)),
                None => Err(Error::Parse {
                    position: self.offset(),
                    message: "dangling escape at end of pattern".to_string(),
                }),
            },
            Some(c) if METACHARS.contains(&c) => Err(Error::Parse {
                position: offset,
                message: format!("unexpected {c:?} (escape it to match literally)"),
            }),
            Some(c) if c.is_whitespace() => Err(Error::Parse {
                position: offset,
                message: "whitespace is not allowed in patterns".to_string(),
            }),
            Some(c) => Ok(RegexAst::Literal(Symbol::new(c)?)),
            None => Err(Error::Parse {
                position: offset,
                message: "expected an atom".to_string(),
            }),
        }
    }
}

fn build_fragment(ast: &RegexAst, nfa: &mut Nfa) -> (usize, usize) {
    match ast {
        RegexAst::Empty => (nfa.add_state(), nfa.add_state()),
        RegexAst::Epsilon => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_epsilon(s, e);
            (s, e)
        }
        RegexAst::Literal(sym) => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_edge(s, sym.as_char(), e);
            (s, e)
        }
        RegexAst::Concat(children) => {
            let mut iter = children.iter();
            let (start, mut end) =
                build_fragment(iter.next().expect("concat has children"), nfa);
            for child in iter {
                let (s, e) = build_fragment(child, nfa);
                nfa.add_epsilon(end, s);
                end = e;
            }
            (start, end)
        }
        RegexAst::Union(children) => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            for child in children {
                let (cs, ce) = build_fragment(child, nfa);
                nfa.add_epsilon(s, cs);
                nfa.add_epsilon(ce, e);
            }
            (s, e)
        }
        RegexAst::Star(child) => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            let (cs, ce) = build_fragment(child, nfa);
            nfa.add_epsilon(s, e);
            nfa.add_epsilon(s, cs);
            nfa.add_epsilon(ce, cs);
            nfa.add_epsilon(ce, e);
            (s, e)
        }
        RegexAst::Plus(child) => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            let (cs, ce) = build_fragment(child, nfa);
            nfa.add_epsilon(s, cs);
            nfa.add_epsilon(ce, cs);
            nfa.add_epsilon(ce, e);
            (s, e)
        }
        RegexAst::Optional(child) => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            let (cs, ce) = build_fragment(child, nfa);
            nfa.add_epsilon(s, e);
            nfa.add_epsilon(s, cs);
            nfa.add_epsilon(ce, e);
            (s, e)
        }
    }
}

/// Compiles a regex to a minimal total DFA.
///
/// The alphabet is the `hint` when given (every literal must then belong to
/// it), otherwise exactly the set of literals appearing in the pattern.
pub fn compile_regex(text: &str, hint: Option<&Alphabet>) -> Result<Dfa> {
    let ast = RegexAst::parse(text)?;
    let literals = ast.literals();
    let alphabet = match hint {
        Some(hint) => {
            for ch in &literals {
                if !hint.contains(*ch) {
                    return Err(Error::AlphabetMismatch {
                        message: format!("literal {ch:?} is outside the alphabet hint {hint}"),
                    });
                }
            }
            hint.clone()
        }
        None => Alphabet::new(literals)?,
    };
    Ok(ast.to_nfa().determinize(&alphabet).minimize())
}
