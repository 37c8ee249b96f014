//! Total deterministic finite automata in a canonical form.
//!
//! Every `Dfa` in this crate satisfies three structural invariants:
//!
//! * the transition function is total (a sink state is materialized where
//!   needed),
//! * every state is reachable from the start state,
//! * states are numbered in breadth-first discovery order from the start,
//!   taking symbols in alphabet order; the start state is always `0`.
//!
//! The numbering makes equal minimal automata structurally identical,
//! which keeps enumeration output, grammar conversions, and search
//! deduplication stable.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::alphabet::{canonical_word_cmp, Alphabet};
use crate::error::{Error, Result};

pub type StateId = usize;

/// Default bound for bounded word enumeration.
pub const DEFAULT_ENUM_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<StateId>>,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from an explicit transition table, validating shape and
    /// renumbering states into canonical breadth-first order.
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<StateId>>,
        start: StateId,
        accepting: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::Precondition {
                message: "a DFA needs at least one state".to_string(),
            });
        }
        if start >= n {
            return Err(Error::Precondition {
                message: format!("start state {start} out of range 0..{n}"),
            });
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Precondition {
                    message: format!(
                        "state {s} has {} transitions, alphabet has {} symbols",
                        row.len(),
                        alphabet.len()
                    ),
                });
            }
            for &t in row {
                if t >= n {
                    return Err(Error::Precondition {
                        message: format!("transition target {t} out of range 0..{n}"),
                    });
                }
            }
        }
        let mut accept_flags = vec![false; n];
        for s in accepting {
            if s >= n {
                return Err(Error::Precondition {
                    message: format!("accepting state {s} out of range 0..{n}"),
                });
            }
            accept_flags[s] = true;
        }
        Ok(Self::from_table(alphabet, delta, start, accept_flags))
    }

    /// Internal constructor for already-validated tables.
    pub(crate) fn from_table(
        alphabet: Alphabet,
        delta: Vec<Vec<StateId>>,
        start: StateId,
        accepting: Vec<bool>,
    ) -> Self {
        // BFS renumbering; unreachable states are dropped.
        let mut order = vec![usize::MAX; delta.len()];
        let mut bfs = Vec::new();
        order[start] = 0;
        bfs.push(start);
        let mut head = 0;
        while head < bfs.len() {
            let s = bfs[head];
            head += 1;
            for &t in &delta[s] {
                if order[t] == usize::MAX {
                    order[t] = bfs.len();
                    bfs.push(t);
                }
            }
        }
        let mut new_delta = vec![Vec::with_capacity(alphabet.len()); bfs.len()];
        let mut new_accepting = vec![false; bfs.len()];
        for (new_id, &old_id) in bfs.iter().enumerate() {
            new_delta[new_id] = delta[old_id].iter().map(|&t| order[t]).collect();
            new_accepting[new_id] = accepting[old_id];
        }
        Dfa {
            alphabet,
            delta: new_delta,
            accepting: new_accepting,
        }
    }

    /// The single-state automaton of the empty language.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        let width = alphabet.len();
        Dfa {
            alphabet,
            delta: vec![vec![0; width]],
            accepting: vec![false],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    /// The start state; always `0` under the canonical numbering.
    pub fn start(&self) -> StateId {
        0
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&s| self.accepting[s])
    }

    pub fn step(&self, state: StateId, symbol: char) -> Option<StateId> {
        self.alphabet
            .index_of(symbol)
            .map(|k| self.delta[state][k])
    }

    /// Runs the automaton over a word, failing on foreign symbols.
    pub fn run(&self, word: &str) -> Result<StateId> {
        let mut state = 0;
        for ch in word.chars() {
            state = self.step(state, ch).ok_or_else(|| Error::AlphabetMismatch {
                message: format!("symbol {ch:?} is not in the alphabet {}", self.alphabet),
            })?;
        }
        Ok(state)
    }

    /// Language membership. Words with symbols outside the alphabet are
    /// simply not in the language.
    pub fn accepts(&self, word: &str) -> bool {
        match self.run(word) {
            Ok(state) => self.accepting[state],
            Err(_) => false,
        }
    }

    /// Minimal automaton of the same language, via partition refinement.
    pub fn minimize(&self) -> Dfa {
        let n = self.state_count();
        let mut class = vec![0usize; n];
        for s in 0..n {
            class[s] = usize::from(self.accepting[s]);
        }
        let mut class_count = 2;
        loop {
            // Signature: own class plus the class of every successor.
            let mut ids: std::collections::HashMap<Vec<usize>, usize> =
                std::collections::HashMap::new();
            let mut next = vec![0usize; n];
            for s in 0..n {
                let mut sig = Vec::with_capacity(self.alphabet.len() + 1);
                sig.push(class[s]);
                for &t in &self.delta[s] {
                    sig.push(class[t]);
                }
                let fresh = ids.len();
                next[s] = *ids.entry(sig).or_insert(fresh);
            }
            let next_count = ids.len();
            if next_count == class_count {
                class = next;
                break;
            }
            class = next;
            class_count = next_count;
        }

        let class_total = class.iter().max().map(|&m| m + 1).unwrap_or(1);
        let mut delta = vec![Vec::new(); class_total];
        let mut accepting = vec![false; class_total];
        let mut filled = vec![false; class_total];
        for s in 0..n {
            let c = class[s];
            if !filled[c] {
                filled[c] = true;
                delta[c] = self.delta[s].iter().map(|&t| class[t]).collect();
                accepting[c] = self.accepting[s];
            }
        }
        Dfa::from_table(self.alphabet.clone(), delta, class[0], accepting)
    }

    /// Automaton of the reversed language `{ wᴿ : w ∈ L }`.
    pub fn reverse(&self) -> Dfa {
        let n = self.state_count();
        let k = self.alphabet.len();
        // Predecessors per (state, symbol).
        let mut preds = vec![vec![Vec::new(); k]; n];
        for s in 0..n {
            for (sym, &t) in self.delta[s].iter().enumerate() {
                preds[t][sym].push(s);
            }
        }
        let initial: BTreeSet<usize> = self.accepting_states().collect();
        let mut ids: std::collections::BTreeMap<BTreeSet<usize>, usize> =
            std::collections::BTreeMap::new();
        let mut subsets = vec![initial.clone()];
        let mut table: Vec<Vec<usize>> = Vec::new();
        ids.insert(initial, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let subset = subsets[id].clone();
            let mut row = Vec::with_capacity(k);
            for sym in 0..k {
                let mut next = BTreeSet::new();
                for &t in &subset {
                    next.extend(preds[t][sym].iter().copied());
                }
                let next_id = *ids.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                row.push(next_id);
            }
            if table.len() < subsets.len() {
                table.resize(subsets.len(), Vec::new());
            }
            table[id] = row;
        }
        let accepting = subsets.iter().map(|s| s.contains(&0)).collect();
        Dfa::from_table(self.alphabet.clone(), table, 0, accepting).minimize()
    }

    /// Product automaton of the intersection. Both operands must carry the
    /// same alphabet.
    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                message: format!(
                    "cannot intersect automata over {} and {}",
                    self.alphabet, other.alphabet
                ),
            });
        }
        let cols = other.state_count();
        let pair = |a: usize, b: usize| a * cols + b;
        let mut delta = vec![Vec::new(); self.state_count() * cols];
        let mut accepting = vec![false; self.state_count() * cols];
        for a in 0..self.state_count() {
            for b in 0..cols {
                let row = (0..self.alphabet.len())
                    .map(|k| pair(self.delta[a][k], other.delta[b][k]))
                    .collect();
                delta[pair(a, b)] = row;
                accepting[pair(a, b)] = self.accepting[a] && other.accepting[b];
            }
        }
        Ok(Dfa::from_table(self.alphabet.clone(), delta, pair(0, 0), accepting).minimize())
    }

    /// Exact language equality, decided by emptiness of the symmetric
    /// difference on the product automaton.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                message: format!(
                    "cannot compare automata over {} and {}",
                    self.alphabet, other.alphabet
                ),
            });
        }
        let a = self.minimize();
        let b = other.minimize();
        let cols = b.state_count();
        let mut seen = vec![false; a.state_count() * cols];
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        seen[0] = true;
        while let Some((s, t)) = queue.pop_front() {
            if a.accepting[s] != b.accepting[t] {
                return Ok(false);
            }
            for k in 0..a.alphabet.len() {
                let ns = a.delta[s][k];
                let nt = b.delta[t][k];
                if !seen[ns * cols + nt] {
                    seen[ns * cols + nt] = true;
                    queue.push_back((ns, nt));
                }
            }
        }
        Ok(true)
    }

    /// `true` when no accepting state exists (all states are reachable by
    /// the canonical-form invariant).
    pub fn is_empty_language(&self) -> bool {
        !self.accepting.iter().any(|&a| a)
    }

    /// Number of accepted words of length exactly `n`, by dynamic
    /// programming over states.
    pub fn count_words(&self, n: usize) -> u128 {
        let mut counts = vec![0u128; self.state_count()];
        counts[0] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; self.state_count()];
            for (s, row) in self.delta.iter().enumerate() {
                if counts[s] == 0 {
                    continue;
                }
                for &t in row {
                    next[t] += counts[s];
                }
            }
            counts = next;
        }
        (0..self.state_count())
            .filter(|&s| self.accepting[s])
            .map(|s| counts[s])
            .sum()
    }

    /// Whether any word of length exactly `n` is accepted.
    pub fn has_word_of_length(&self, n: usize) -> bool {
        let mut reach = vec![false; self.state_count()];
        reach[0] = true;
        for _ in 0..n {
            let mut next = vec![false; self.state_count()];
            for (s, row) in self.delta.iter().enumerate() {
                if reach[s] {
                    for &t in row {
                        next[t] = true;
                    }
                }
            }
            reach = next;
        }
        (0..self.state_count()).any(|s| reach[s] && self.accepting[s])
    }

    /// All accepted words of length exactly `n`, in lexicographic alphabet
    /// order.
    pub fn words_with_length(&self, n: usize) -> Vec<String> {
        // can_accept[r][s]: an accepting state is reachable from s in
        // exactly r steps.
        let mut can_accept = vec![self.accepting.clone()];
        for r in 1..=n {
            let prev = &can_accept[r - 1];
            let row = (0..self.state_count())
                .map(|s| self.delta[s].iter().any(|&t| prev[t]))
                .collect();
            can_accept.push(row);
        }
        let mut out = Vec::new();
        let mut word = String::new();
        self.emit(0, n, &can_accept, &mut word, &mut out);
        out
    }

    fn emit(
        &self,
        state: StateId,
        remaining: usize,
        can_accept: &[Vec<bool>],
        word: &mut String,
        out: &mut Vec<String>,
    ) {
        if remaining == 0 {
            if self.accepting[state] {
                out.push(word.clone());
            }
            return;
        }
        for (k, ch) in self.alphabet.chars().enumerate() {
            let next = self.delta[state][k];
            if can_accept[remaining - 1][next] {
                word.push(ch);
                self.emit(next, remaining - 1, can_accept, word, out);
                word.pop();
            }
        }
    }

    /// All accepted words of length at most `max_len`, ordered by length
    /// and then lexicographically, subject to the default cap.
    pub fn enumerate(&self, max_len: usize) -> Result<Vec<String>> {
        self.enumerate_with_cap(max_len, DEFAULT_ENUM_CAP)
    }

    pub fn enumerate_with_cap(&self, max_len: usize, cap: usize) -> Result<Vec<String>> {
        if max_len > cap {
            return Err(Error::CapExceeded {
                requested: max_len,
                cap,
            });
        }
        let mut out = Vec::new();
        for n in 0..=max_len {
            out.extend(self.words_with_length(n));
        }
        debug_assert!(out.windows(2).all(|w| canonical_word_cmp(&w[0], &w[1]).is_lt()));
        Ok(out)
    }

    /// Debug dump: header lines followed by one line per transition.
    pub fn dump(&self) -> String {
        let mut lines = Vec::new();
        lines.push(format!("alphabet: {}", self.alphabet));
        lines.push("start 0".to_string());
        let accepting: Vec<String> = self.accepting_states().map(|s| s.to_string()).collect();
        lines.push(format!("accept {}", accepting.join(" ")).trim_end().to_string());
        for s in 0..self.state_count() {
            for (k, ch) in self.alphabet.chars().enumerate() {
                lines.push(format!("{} {} -> {}", s, ch, self.delta[s][k]));
            }
        }
        lines.join("\n")
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

/// Automaton of all words `w` over `alphabet` with `|w| ≡ residue (mod
/// modulus)` and `|w| ≥ min_len`.
pub fn length_filter(
    alphabet: &Alphabet,
    modulus: usize,
    residue: usize,
    min_len: usize,
) -> Result<Dfa> {
    if modulus == 0 || residue >= modulus {
        return Err(Error::InvalidResidue { residue, modulus });
    }
    let n = min_len + modulus;
    let mut delta = Vec::with_capacity(n);
    for i in 0..n {
        let next = if i + 1 < n { i + 1 } else { min_len };
        delta.push(vec![next; alphabet.len()]);
    }
    let accepting: Vec<usize> = (min_len..n).filter(|i| i % modulus == residue % modulus).collect();
    Ok(Dfa::new(alphabet.clone(), delta, 0, accepting)?.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile_regex;

    fn abc_star() -> Dfa {
        compile_regex("(abc)*", None).unwrap()
    }

    #[test]
    fn reverse_of_cycle() {
        let rev = abc_star().reverse();
        let cba = compile_regex("(cba)*", None).unwrap();
        assert!(rev.equivalent(&cba).unwrap());
    }

    #[test]
    fn reverse_of_epsilon_language() {
        let eps = compile_regex("()", None).unwrap();
        assert!(eps.reverse().equivalent(&eps).unwrap());
    }

    #[test]
    fn reverse_matches_wordwise_reversal() {
        let d = compile_regex("ab|b", None).unwrap();
        let rev = d.reverse();
        let mut expect: Vec<String> = d
            .enumerate(4)
            .unwrap()
            .into_iter()
            .map(|w| w.chars().rev().collect())
            .collect();
        crate::automata::canonical_sort(&mut expect);
        assert_eq!(rev.enumerate(4).unwrap(), expect);
        assert_eq!(expect, vec!["b".to_string(), "ba".to_string()]);
    }

    #[test]
    fn intersect_with_universal() {
        let d = abc_star();
        let sigma_star = compile_regex("(a|b|c)*", None).unwrap();
        let both = d.intersect(&sigma_star).unwrap();
        assert!(both.equivalent(&d).unwrap());
    }

    #[test]
    fn intersect_disjoint_lengths_is_empty() {
        let d = abc_star();
        let filter = length_filter(d.alphabet(), 3, 1, 0).unwrap();
        let both = d.intersect(&filter).unwrap();
        assert!(both.is_empty_language());
        assert!(both.enumerate(12).unwrap().is_empty());
    }

    #[test]
    fn intersect_fixed_length_block() {
        let hint = Alphabet::new(['a', 'b']).unwrap();
        let a_star = compile_regex("a*", Some(&hint)).unwrap();
        let two = compile_regex("(a|b)(a|b)", None).unwrap();
        let both = a_star.intersect(&two).unwrap();
        assert_eq!(both.enumerate(3).unwrap(), vec!["aa".to_string()]);
    }

    #[test]
    fn intersect_rejects_different_alphabets() {
        let d = abc_star();
        let other = compile_regex("a*", None).unwrap();
        assert!(matches!(
            d.intersect(&other),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn length_filter_examples() {
        let sigma = Alphabet::new(['a', 'b']).unwrap();
        let d = length_filter(&sigma, 3, 1, 4).unwrap();
        for n in 0..=12 {
            assert_eq!(d.has_word_of_length(n), n >= 4 && n % 3 == 1, "length {n}");
        }
        let all = length_filter(&sigma, 1, 0, 0).unwrap();
        assert_eq!(all.state_count(), 1);
        assert!(all.is_accepting(0));
        let even = length_filter(&sigma, 2, 0, 2).unwrap();
        let lens: Vec<usize> = (0..=5).filter(|&n| even.has_word_of_length(n)).collect();
        assert_eq!(lens, vec![2, 4]);
    }

    #[test]
    fn length_filter_rejects_bad_residue() {
        let sigma = Alphabet::new(['a']).unwrap();
        assert!(matches!(
            length_filter(&sigma, 3, 3, 0),
            Err(Error::InvalidResidue { .. })
        ));
    }

    #[test]
    fn enumerate_star() {
        assert_eq!(
            abc_star().enumerate(7).unwrap(),
            vec!["".to_string(), "abc".to_string(), "abcabc".to_string()]
        );
    }

    #[test]
    fn enumerate_empty_language() {
        let sigma = Alphabet::new(['a']).unwrap();
        assert!(Dfa::empty_language(sigma).enumerate(10).unwrap().is_empty());
    }

    #[test]
    fn enumerate_cap() {
        assert!(matches!(
            abc_star().enumerate(25),
            Err(Error::CapExceeded { requested: 25, cap: 24 })
        ));
    }

    #[test]
    fn count_words_examples() {
        assert_eq!(abc_star().count_words(6), 1);
        assert_eq!(abc_star().count_words(0), 1);
        let two = compile_regex("(a|b)*", None).unwrap();
        assert_eq!(two.count_words(3), 8);
        assert_eq!(two.words_with_length(3).len(), 8);
    }

    #[test]
    fn count_agrees_with_enumeration() {
        let d = compile_regex("(ab|b)*a?", None).unwrap();
        for n in 0..=8 {
            assert_eq!(d.count_words(n) as usize, d.words_with_length(n).len());
        }
    }

    #[test]
    fn equivalence_examples() {
        let d = abc_star();
        assert!(d.equivalent(&d.reverse().reverse()).unwrap());
        let unrolled = compile_regex("(abc)*abc|()", None).unwrap();
        assert!(d.equivalent(&unrolled).unwrap());
        assert_eq!(d.enumerate(12).unwrap(), unrolled.enumerate(12).unwrap());
        let acb = compile_regex("(acb)*", None).unwrap();
        assert!(!d.equivalent(&acb).unwrap());
        assert!(acb.accepts("acb"));
        assert!(!d.accepts("acb"));
    }

    #[test]
    fn dump_is_stable() {
        let d = compile_regex("a", None).unwrap();
        let dump = d.dump();
        assert!(dump.starts_with("alphabet: a\nstart 0\naccept 1\n"));
        assert!(dump.contains("0 a -> 1"));
    }
}
