use std::fmt;

use crate::error::{Error, Result};

/// A single terminal symbol: one printable, non-whitespace Unicode scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(char);

impl Symbol {
    pub fn new(ch: char) -> Result<Self> {
        if ch.is_whitespace() || ch.is_control() {
            return Err(Error::InvalidSymbol { symbol: ch });
        }
        Ok(Symbol(ch))
    }

    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered set of symbols. Symbols are kept sorted by scalar value and
/// that ordering is the canonical enumeration order used throughout the
/// crate (words are listed by length, then lexicographically by this
/// order).
///
/// An empty alphabet is permitted; it only ever describes the degenerate
/// languages `{}` and `{ε}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    /// Builds an alphabet from characters, validating, sorting and
    /// deduplicating them.
    pub fn new<I: IntoIterator<Item = char>>(chars: I) -> Result<Self> {
        let mut symbols = chars
            .into_iter()
            .map(Symbol::new)
            .collect::<Result<Vec<_>>>()?;
        symbols.sort();
        symbols.dedup();
        Ok(Alphabet { symbols })
    }

    /// The two folding directions, `d` and `u`.
    pub fn directions() -> Self {
        Alphabet::new(['d', 'u']).expect("direction symbols are valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, ch: char) -> bool {
        self.index_of(ch).is_some()
    }

    pub fn index_of(&self, ch: char) -> Option<usize> {
        self.symbols.binary_search(&Symbol(ch)).ok()
    }

    pub fn char_at(&self, index: usize) -> char {
        self.symbols[index].as_char()
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.symbols.iter().map(|s| s.as_char())
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.chars().all(|c| other.contains(c))
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut symbols: Vec<Symbol> = self
            .symbols
            .iter()
            .chain(other.symbols.iter())
            .copied()
            .collect();
        symbols.sort();
        symbols.dedup();
        Alphabet { symbols }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// Compares words canonically: first by length in characters, then
/// lexicographically.
pub fn canonical_word_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    let la = a.chars().count();
    let lb = b.chars().count();
    la.cmp(&lb).then_with(|| a.cmp(b))
}

/// Sorts a word list into canonical (length, lexicographic) order and
/// removes duplicates.
pub fn canonical_sort(words: &mut Vec<String>) {
    words.sort_by(|a, b| canonical_word_cmp(a, b));
    words.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_sorts_and_dedupes() {
        let a = Alphabet::new(['c', 'a', 'b', 'a']).unwrap();
        assert_eq!(a.to_string(), "abc");
        assert_eq!(a.index_of('b'), Some(1));
        assert_eq!(a.index_of('z'), None);
    }

    #[test]
    fn whitespace_rejected() {
        assert!(matches!(
            Alphabet::new(['a', ' ']),
            Err(Error::InvalidSymbol { symbol: ' ' })
        ));
    }

    #[test]
    fn empty_alphabet_allowed() {
        let a = Alphabet::new([]).unwrap();
        assert!(a.is_empty());
    }

    #[test]
    fn canonical_order_is_length_first() {
        let mut words = vec!["ba".to_string(), "c".to_string(), "ab".to_string()];
        canonical_sort(&mut words);
        assert_eq!(words, vec!["c", "ab", "ba"]);
    }
}
