//! Linear context-free grammars (at most one nonterminal per right-hand
//! side), together with the product construction that compiles a pair of
//! right-linear grammars into the linear grammar of a folding system,
//! trimming, bounded enumeration, and quadratic-time membership.

mod enumerate;
mod membership;
mod parse;
mod product;
mod trim;

use std::collections::HashMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::automata::{Alphabet, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};

pub use product::{compile_automata, compile_automata_raw, product_construct, ProductNonterminal};

/// One production of a linear grammar, `lhs → prefix inner suffix`.
/// `inner = None` marks a terminal-only rule `lhs → prefix` (the empty
/// rule when `prefix` is empty too); the suffix is then empty as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: usize,
    pub prefix: String,
    pub inner: Option<usize>,
    pub suffix: String,
}

impl Rule {
    /// Rule length contributed by terminal symbols alone.
    fn terminal_len(&self) -> usize {
        self.prefix.chars().count() + self.suffix.chars().count()
    }
}

/// A linear context-free grammar. Nonterminals are interned strings; the
/// structure of [`Rule`] makes more than one nonterminal per right-hand
/// side unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearGrammar {
    nonterminals: Vec<String>,
    terminals: Alphabet,
    rules: Vec<Rule>,
    start: usize,
}

/// Incremental construction of a [`LinearGrammar`].
#[derive(Debug, Default)]
pub struct GrammarBuilder {
    nonterminals: Vec<String>,
    index: HashMap<String, usize>,
    rules: Vec<(usize, String, Option<usize>, String)>,
    start: Option<usize>,
}

impl GrammarBuilder {
    pub fn new(start: &str) -> Self {
        let mut builder = GrammarBuilder::default();
        let id = builder.nonterminal(start);
        builder.start = Some(id);
        builder
    }

    /// Declares (or looks up) a nonterminal by name.
    pub fn nonterminal(&mut self, name: &str) -> usize {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.nonterminals.len();
        self.nonterminals.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn rule(&mut self, lhs: &str, prefix: &str, inner: Option<&str>, suffix: &str) {
        let lhs = self.nonterminal(lhs);
        let inner = inner.map(|name| self.nonterminal(name));
        self.rules
            .push((lhs, prefix.to_string(), inner, suffix.to_string()));
    }

    pub fn finish(self) -> Result<LinearGrammar> {
        let start = self.start.ok_or_else(|| Error::Precondition {
            message: "grammar has no start symbol".to_string(),
        })?;
        let mut terminal_chars = Vec::new();
        let mut rules = Vec::with_capacity(self.rules.len());
        for (lhs, prefix, inner, suffix) in self.rules {
            if inner.is_none() && !suffix.is_empty() {
                return Err(Error::Precondition {
                    message: "terminal-only rules carry their word in the prefix".to_string(),
                });
            }
            terminal_chars.extend(prefix.chars());
            terminal_chars.extend(suffix.chars());
            rules.push(Rule {
                lhs,
                prefix,
                inner,
                suffix,
            });
        }
        Ok(LinearGrammar {
            nonterminals: self.nonterminals,
            terminals: Alphabet::new(terminal_chars)?,
            rules,
            start,
        })
    }
}

impl LinearGrammar {
    /// Parses the grammar file format. See the crate documentation for the
    /// format description.
    pub fn parse(text: &str) -> Result<LinearGrammar> {
        parse::parse_grammar(text)
    }

    pub fn nonterminal_names(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn name(&self, nt: usize) -> &str {
        &self.nonterminals[nt]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn start_name(&self) -> &str {
        &self.nonterminals[self.start]
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rules_of(&self, nt: usize) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter().filter(move |r| r.lhs == nt)
    }

    /// `true` when every rule keeps its nonterminal (if any) rightmost,
    /// i.e. the grammar generates a regular language by shape.
    pub fn is_right_linear(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.inner.is_none() || r.suffix.is_empty())
    }

    /// The identical grammar restarted at the named nonterminal.
    pub fn start_variant(&self, name: &str) -> Result<LinearGrammar> {
        let start = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownNonterminal {
                name: name.to_string(),
            })?;
        let mut out = self.clone();
        out.start = start;
        Ok(out)
    }

    /// Removes nonproductive and unreachable nonterminals. The language is
    /// unchanged; the start symbol is kept even when it derives nothing.
    pub fn trim(&self) -> LinearGrammar {
        trim::trim(self)
    }

    /// Bounded membership-complete enumeration: every generated word of
    /// length at most `max_len`, by length then lexicographically.
    pub fn enumerate(&self, max_len: usize) -> Result<Vec<String>> {
        self.enumerate_with_cap(max_len, DEFAULT_ENUM_CAP)
    }

    pub fn enumerate_with_cap(&self, max_len: usize, cap: usize) -> Result<Vec<String>> {
        Ok(self
            .enumerate_by_length_with_cap(max_len, cap)?
            .into_iter()
            .flatten()
            .collect())
    }

    /// Same enumeration, grouped by word length (index = length).
    pub fn enumerate_by_length_with_cap(
        &self,
        max_len: usize,
        cap: usize,
    ) -> Result<Vec<Vec<String>>> {
        enumerate::enumerate_by_length(self, max_len, cap)
    }

    /// Membership by span dynamic programming over a binarized copy of the
    /// rules; `O(|word|² · |rules|)` time.
    pub fn contains(&self, word: &str) -> bool {
        membership::contains(self, word)
    }

    /// Relabels nonterminals into a discovery order determined only by the
    /// grammar's shape, so that structurally equal grammars compare equal
    /// regardless of their original names.
    pub fn canonical_relabel(&self) -> LinearGrammar {
        let mut order: Vec<usize> = Vec::new();
        let mut assigned = vec![usize::MAX; self.nonterminals.len()];
        assigned[self.start] = 0;
        order.push(self.start);
        let mut head = 0;
        while head < order.len() {
            let nt = order[head];
            head += 1;
            let mut rules: Vec<&Rule> = self.rules_of(nt).collect();
            rules.sort_by(|a, b| {
                (&a.prefix, &a.suffix, a.inner.map(|i| &self.nonterminals[i]))
                    .cmp(&(&b.prefix, &b.suffix, b.inner.map(|i| &self.nonterminals[i])))
            });
            for rule in rules {
                if let Some(inner) = rule.inner {
                    if assigned[inner] == usize::MAX {
                        assigned[inner] = order.len();
                        order.push(inner);
                    }
                }
            }
        }
        let mut builder = GrammarBuilder::new("N0");
        for (new_id, _) in order.iter().enumerate() {
            builder.nonterminal(&format!("N{new_id}"));
        }
        let mut relabeled: Vec<(usize, &Rule)> = self
            .rules
            .iter()
            .filter(|r| {
                assigned[r.lhs] != usize::MAX
                    && r.inner.map_or(true, |i| assigned[i] != usize::MAX)
            })
            .map(|r| (assigned[r.lhs], r))
            .collect();
        relabeled.sort_by(|(la, a), (lb, b)| {
            (la, &a.prefix, &a.suffix, a.inner.map(|i| assigned[i])).cmp(&(
                lb,
                &b.prefix,
                &b.suffix,
                b.inner.map(|i| assigned[i]),
            ))
        });
        for (lhs, rule) in relabeled {
            let inner_name = rule.inner.map(|i| format!("N{}", assigned[i]));
            builder.rule(
                &format!("N{lhs}"),
                &rule.prefix,
                inner_name.as_deref(),
                &rule.suffix,
            );
        }
        builder.finish().expect("relabeling preserves validity")
    }
}

fn display_piece(out: &mut String, token: &str) {
    if !out.is_empty() {
        out.push(' ');
    }
    out.push_str(token);
}

fn terminal_token(ch: char) -> String {
    // Quote the characters that collide with the file format.
    if matches!(ch, '|' | '-' | '#' | '\'') {
        format!("'{ch}'")
    } else {
        ch.to_string()
    }
}

impl fmt::Display for LinearGrammar {
    /// Emits the grammar file format. Nonterminals that never appear on a
    /// left-hand side cannot be expressed by the text format; use the JSON
    /// form for grammars that have not been trimmed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {}", self.start_name())?;
        for (id, name) in self.nonterminals.iter().enumerate() {
            let mut alts: Vec<String> = Vec::new();
            for rule in self.rules_of(id) {
                let mut alt = String::new();
                for ch in rule.prefix.chars() {
                    display_piece(&mut alt, &terminal_token(ch));
                }
                if let Some(inner) = rule.inner {
                    display_piece(&mut alt, &self.nonterminals[inner]);
                }
                for ch in rule.suffix.chars() {
                    display_piece(&mut alt, &terminal_token(ch));
                }
                if alt.is_empty() {
                    alt.push_str("eps");
                }
                alts.push(alt);
            }
            if !alts.is_empty() {
                writeln!(f, "{} -> {}", name, alts.join(" | "))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PieceDto {
    kind: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct RuleDto {
    lhs: String,
    rhs: Vec<PieceDto>,
}

#[derive(Serialize, Deserialize)]
struct GrammarDto {
    start: String,
    rules: Vec<RuleDto>,
}

impl Serialize for LinearGrammar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rules = self
            .rules
            .iter()
            .map(|rule| {
                let mut rhs = Vec::new();
                for ch in rule.prefix.chars() {
                    rhs.push(PieceDto {
                        kind: "T".to_string(),
                        value: ch.to_string(),
                    });
                }
                if let Some(inner) = rule.inner {
                    rhs.push(PieceDto {
                        kind: "N".to_string(),
                        value: self.nonterminals[inner].clone(),
                    });
                }
                for ch in rule.suffix.chars() {
                    rhs.push(PieceDto {
                        kind: "T".to_string(),
                        value: ch.to_string(),
                    });
                }
                RuleDto {
                    lhs: self.nonterminals[rule.lhs].clone(),
                    rhs,
                }
            })
            .collect();
        GrammarDto {
            start: self.start_name().to_string(),
            rules,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearGrammar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = GrammarDto::deserialize(deserializer)?;
        let mut builder = GrammarBuilder::new(&dto.start);
        // Nonterminals are every lhs plus every rhs entry of kind N.
        for rule in &dto.rules {
            builder.nonterminal(&rule.lhs);
            for piece in &rule.rhs {
                if piece.kind == "N" {
                    builder.nonterminal(&piece.value);
                }
            }
        }
        for rule in &dto.rules {
            let mut prefix = String::new();
            let mut suffix = String::new();
            let mut inner: Option<String> = None;
            for piece in &rule.rhs {
                match piece.kind.as_str() {
                    "T" => {
                        let mut chars = piece.value.chars();
                        let (Some(ch), None) = (chars.next(), chars.next()) else {
                            return Err(D::Error::custom(format!(
                                "terminal value {:?} must be a single character",
                                piece.value
                            )));
                        };
                        if inner.is_some() {
                            suffix.push(ch);
                        } else {
                            prefix.push(ch);
                        }
                    }
                    "N" => {
                        if inner.is_some() {
                            return Err(D::Error::custom(format!(
                                "rule for '{}' has more than one nonterminal",
                                rule.lhs
                            )));
                        }
                        inner = Some(piece.value.clone());
                    }
                    other => {
                        return Err(D::Error::custom(format!(
                            "piece kind must be \"T\" or \"N\", found {other:?}"
                        )))
                    }
                }
            }
            builder.rule(&rule.lhs, &prefix, inner.as_deref(), &suffix);
        }
        builder.finish().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> LinearGrammar {
        let mut b = GrammarBuilder::new("S");
        b.rule("S", "a", Some("S"), "bc");
        b.rule("S", "a", None, "");
        b.finish().unwrap()
    }

    #[test]
    fn builder_collects_terminals() {
        let g = sample();
        assert_eq!(g.terminals().to_string(), "abc");
        assert_eq!(g.start_name(), "S");
        assert_eq!(g.rules().len(), 2);
    }

    #[test]
    fn right_linearity_check() {
        let g = sample();
        assert!(!g.is_right_linear());
        let mut b = GrammarBuilder::new("A");
        b.rule("A", "a", Some("A"), "");
        b.rule("A", "", None, "");
        assert!(b.finish().unwrap().is_right_linear());
    }

    #[test]
    fn start_variant() {
        let mut b = GrammarBuilder::new("S");
        b.rule("S", "a", Some("T"), "");
        b.rule("T", "b", None, "");
        let g = b.finish().unwrap();
        let t = g.start_variant("T").unwrap();
        assert_eq!(t.start_name(), "T");
        assert_eq!(g.start_variant("S").unwrap(), g);
        assert!(matches!(
            g.start_variant("Z"),
            Err(Error::UnknownNonterminal { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = sample();
        let json = serde_json::to_string(&g).unwrap();
        assert!(json.contains(r#""kind":"N""#));
        let back: LinearGrammar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_rejects_two_nonterminals() {
        let text = r#"{"start":"S","rules":[{"lhs":"S","rhs":[{"kind":"N","value":"S"},{"kind":"N","value":"S"}]}]}"#;
        assert!(serde_json::from_str::<LinearGrammar>(text).is_err());
    }

    #[test]
    fn display_quotes_special_terminals() {
        let mut b = GrammarBuilder::new("S");
        b.rule("S", "a#", None, "");
        let g = b.finish().unwrap();
        let shown = g.to_string();
        assert!(shown.contains("S -> a '#'"));
        let back = LinearGrammar::parse(&shown).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn canonical_relabel_identifies_isomorphic_grammars() {
        let mut b1 = GrammarBuilder::new("X");
        b1.rule("X", "", None, "");
        b1.rule("X", "a", Some("Y"), "");
        b1.rule("Y", "", Some("X"), "b");
        let g1 = b1.finish().unwrap();

        let mut b2 = GrammarBuilder::new("P");
        b2.rule("P", "a", Some("Q"), "");
        b2.rule("P", "", None, "");
        b2.rule("Q", "", Some("P"), "b");
        let g2 = b2.finish().unwrap();

        assert_eq!(g1.canonical_relabel(), g2.canonical_relabel());
    }
}
