use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::alphabet::Alphabet;
use super::dfa::Dfa;

/// A nondeterministic finite automaton with ε-moves. Used as the
/// intermediate form between regexes or right-linear grammars and DFAs.
#[derive(Debug, Clone, Default)]
pub struct Nfa {
    epsilon: Vec<Vec<usize>>,
    edges: Vec<Vec<(char, usize)>>,
    start: usize,
    accepting: BTreeSet<usize>,
}

impl Nfa {
    pub fn new() -> Self {
        Nfa::default()
    }

    pub fn add_state(&mut self) -> usize {
        self.epsilon.push(Vec::new());
        self.edges.push(Vec::new());
        self.epsilon.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, symbol: char, to: usize) {
        self.edges[from].push((symbol, to));
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) {
        self.epsilon[from].push(to);
    }

    pub fn set_start(&mut self, state: usize) {
        self.start = state;
    }

    pub fn set_accepting(&mut self, state: usize) {
        self.accepting.insert(state);
    }

    pub fn state_count(&self) -> usize {
        self.epsilon.len()
    }

    fn closure(&self, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = seed.into_iter().collect();
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for &t in &self.epsilon[s] {
                if set.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        set
    }

    /// Subset construction over the given alphabet. The result is total
    /// (the empty subset acts as the sink) and minimal.
    pub fn determinize(&self, alphabet: &Alphabet) -> Dfa {
        if self.state_count() == 0 {
            return Dfa::empty_language(alphabet.clone());
        }
        let initial = self.closure([self.start]);
        self.determinize_from(initial, alphabet)
    }

    /// Subset construction starting from an explicit seed set of states
    /// (after ε-closure). Used for reversal, where the run starts in all
    /// former accepting states at once.
    pub fn determinize_from(&self, seed: BTreeSet<usize>, alphabet: &Alphabet) -> Dfa {
        let initial = self.closure(seed);
        let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut table: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();

        ids.insert(initial.clone(), 0);
        subsets.push(initial);
        queue.push_back(0usize);

        while let Some(id) = queue.pop_front() {
            let subset = subsets[id].clone();
            let mut row = Vec::with_capacity(alphabet.len());
            for ch in alphabet.chars() {
                let mut moved = BTreeSet::new();
                for &s in &subset {
                    for &(sym, t) in &self.edges[s] {
                        if sym == ch {
                            moved.insert(t);
                        }
                    }
                }
                let next = self.closure(moved);
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

        let accepting = subsets
            .iter()
            .map(|subset| subset.iter().any(|s| self.accepting.contains(s)))
            .collect();
        Dfa::from_table(alphabet.clone(), table, 0, accepting).minimize()
    }
}
