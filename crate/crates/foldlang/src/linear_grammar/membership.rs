//! Membership for linear grammars.
//!
//! Rules are first binarized to the shapes `A → aB`, `A → Ba`, and
//! `A → ε` (longer terminal blocks are split through fresh symbols; bare
//! unit rules are kept aside and handled by closure). Recognition is then
//! a dynamic program over subword spans that peels one outer terminal per
//! step: the sets for spans of length ℓ depend only on spans of length
//! ℓ−1, so two rolling rows of bitsets suffice. Total work is
//! `O(n² · |rules|)`.

use std::collections::HashMap;

use super::LinearGrammar;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(width: usize) -> Self {
        Bits(vec![0; width.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn clear(&mut self) {
        self.0.fill(0);
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(block, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let bit = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(block * 64 + bit)
            })
        })
    }
}

/// Binarized view of a grammar, reusable across words.
struct Matcher {
    symbols: usize,
    start: usize,
    /// `A → aB`, grouped by `a`.
    left: HashMap<char, Vec<(usize, usize)>>,
    /// `A → Ba`, grouped by `a`.
    right: HashMap<char, Vec<(usize, usize)>>,
    /// Symbols deriving ε directly, already closed under unit reachability.
    epsilon: Bits,
    /// `up[b]` = every symbol that reaches `b` through unit rules.
    up: Vec<Bits>,
}

impl Matcher {
    fn new(grammar: &LinearGrammar) -> Self {
        let mut symbols = grammar.nonterminal_names().len();
        let mut left: HashMap<char, Vec<(usize, usize)>> = HashMap::new();
        let mut right: HashMap<char, Vec<(usize, usize)>> = HashMap::new();
        let mut units: Vec<(usize, usize)> = Vec::new();
        let mut epsilon_direct: Vec<usize> = Vec::new();

        for rule in grammar.rules() {
            let prefix: Vec<char> = rule.prefix.chars().collect();
            let suffix: Vec<char> = rule.suffix.chars().collect();
            let mut cur = rule.lhs;
            for &ch in &prefix {
                let next = symbols;
                symbols += 1;
                left.entry(ch).or_default().push((cur, next));
                cur = next;
            }
            for &ch in suffix.iter().rev() {
                let next = symbols;
                symbols += 1;
                right.entry(ch).or_default().push((cur, next));
                cur = next;
            }
            match rule.inner {
                Some(inner) => units.push((cur, inner)),
                None => epsilon_direct.push(cur),
            }
        }

        // Unit closure as reach masks: up[b] holds every symbol that can
        // reach b through unit edges alone.
        let mut up: Vec<Bits> = (0..symbols).map(|_| Bits::new(symbols)).collect();
        let mut forward: Vec<Vec<usize>> = vec![Vec::new(); symbols];
        for &(a, b) in &units {
            forward[a].push(b);
        }
        for a in 0..symbols {
            let mut seen = vec![false; symbols];
            let mut stack = vec![a];
            seen[a] = true;
            while let Some(x) = stack.pop() {
                up[x].set(a);
                for &y in &forward[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }

        let mut epsilon = Bits::new(symbols);
        for &e in &epsilon_direct {
            epsilon.or_assign(&up[e]);
        }

        Matcher {
            symbols,
            start: grammar.start(),
            left,
            right,
            epsilon,
            up,
        }
    }

    fn close(&self, core: &Bits, out: &mut Bits) {
        for b in core.ones() {
            out.or_assign(&self.up[b]);
        }
    }

    fn matches(&self, word: &str) -> bool {
        let chars: Vec<char> = word.chars().collect();
        let n = chars.len();
        if n == 0 {
            return self.epsilon.get(self.start);
        }
        // prev[i] = symbols deriving the span starting at i of the previous
        // length; length 0 spans all derive exactly the ε symbols.
        let mut prev: Vec<Bits> = vec![self.epsilon.clone(); n + 1];
        let mut cur: Vec<Bits> = vec![Bits::new(self.symbols); n + 1];
        let mut core = Bits::new(self.symbols);
        let empty: Vec<(usize, usize)> = Vec::new();
        for len in 1..=n {
            for i in 0..=n - len {
                core.clear();
                for &(a, b) in self.left.get(&chars[i]).unwrap_or(&empty) {
                    if prev[i + 1].get(b) {
                        core.set(a);
                    }
                }
                let last = chars[i + len - 1];
                for &(a, b) in self.right.get(&last).unwrap_or(&empty) {
                    if prev[i].get(b) {
                        core.set(a);
                    }
                }
                cur[i].clear();
                if !core.is_zero() {
                    self.close(&core, &mut cur[i]);
                }
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        prev[0].get(self.start)
    }
}

pub fn contains(grammar: &LinearGrammar, word: &str) -> bool {
    Matcher::new(grammar).matches(word)
}

#[cfg(test)]
mod tests {
    use crate::linear_grammar::LinearGrammar;

    fn two_branch() -> LinearGrammar {
        LinearGrammar::parse(
            "start S\nS -> S1 | S2\nS1 -> a S1 b c | a '#' b c\nS2 -> d e S2 f | d e '#' f\n",
        )
        .unwrap()
    }

    #[test]
    fn accepts_both_branches() {
        let g = two_branch();
        assert!(g.contains("a#bc"));
        assert!(g.contains("de#f"));
        assert!(g.contains("aa#bcbc"));
        assert!(g.contains("dede#ff"));
    }

    #[test]
    fn rejects_near_misses() {
        let g = two_branch();
        assert!(!g.contains("abc"));
        assert!(!g.contains("a#bcbc"));
        assert!(!g.contains(""));
        assert!(!g.contains("de#ff"));
    }

    #[test]
    fn epsilon_membership() {
        let g = LinearGrammar::parse("start S\nS -> a S b | eps\n").unwrap();
        assert!(g.contains(""));
        assert!(g.contains("ab"));
        assert!(g.contains("aabb"));
        assert!(!g.contains("aab"));
    }

    #[test]
    fn foreign_symbols_are_not_members() {
        let g = two_branch();
        assert!(!g.contains("a#bz"));
    }

    #[test]
    fn agrees_with_enumeration() {
        let g = two_branch();
        let words = g.enumerate(10).unwrap();
        for w in &words {
            assert!(g.contains(w), "{w}");
        }
        // A few words near the language but outside it.
        for w in ["aa#bc", "de#", "#", "ade#f", "aabc"] {
            assert!(!words.contains(&w.to_string()));
            assert!(!g.contains(w), "{w}");
        }
    }
}
