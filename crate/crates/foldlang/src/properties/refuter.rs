//! Bounded refutation: exhaustive search over small folding systems.
//!
//! Candidates are total DFAs in canonical breadth-first form — scanning
//! the transition table row major, new states appear in increasing order
//! and every state is introduced before its own row starts — so no two
//! candidates are isomorphic. Every accepting-set assignment of every
//! canonical table with up to the configured number of states is paired
//! with every procedure candidate over `{u, d}`.
//!
//! A pair survives only if its bounded language matches the target at
//! every length. Three sound prunes run before any folding: length
//! spectra must agree on which lengths are inhabited (a fold of length n
//! exists iff both components have length-n words); for a fixed direction
//! word folding is injective, so the core may never have more length-n
//! words than the target; and the pair count bounds the fold count from
//! above. Survivors are checked length by length against the target's
//! exact word sets.
//!
//! The verdict is deterministic regardless of parallel scheduling: the
//! reported witness is the first one in candidate order, and the
//! statistics count exactly the candidates at or before it.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::folding::{fold_permutation, DirectionWord};
use crate::fsystem::{bounded_equiv, FSystem, DEFAULT_BRUTE_CAP};
use crate::linear_grammar::LinearGrammar;

/// Search bounds for [`refute_bounded`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefuterConfig {
    pub max_core_states: usize,
    pub max_proc_states: usize,
    pub max_len: usize,
    pub core_alphabet: Alphabet,
}

impl RefuterConfig {
    pub fn new(
        max_core_states: usize,
        max_proc_states: usize,
        max_len: usize,
        core_alphabet: Alphabet,
    ) -> Result<Self> {
        if max_core_states == 0 || max_proc_states == 0 {
            return Err(Error::Precondition {
                message: "state bounds must be at least 1".to_string(),
            });
        }
        if max_len > DEFAULT_BRUTE_CAP {
            return Err(Error::CapExceeded {
                requested: max_len,
                cap: DEFAULT_BRUTE_CAP,
            });
        }
        Ok(RefuterConfig {
            max_core_states,
            max_proc_states,
            max_len,
            core_alphabet,
        })
    }
}

/// Search verdict: either no candidate within bounds generates the target
/// up to `max_len`, or the canonically smallest one that does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Refuted,
    Found(FSystem),
}

impl Verdict {
    pub fn witness(&self) -> Option<&FSystem> {
        match self {
            Verdict::Refuted => None,
            Verdict::Found(phi) => Some(phi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefuterOutcome {
    pub verdict: Verdict,
    /// Candidate pairs examined: all of them when refuted, those up to and
    /// including the witness when found.
    pub candidates_tried: u64,
    /// `prune_stats[n]` counts candidate pairs first ruled out at length
    /// `n`. Pairs discarded by a core-level check are charged at the
    /// core's first failing length.
    pub prune_stats: Vec<u64>,
}

/// Progress line data, emitted roughly once per 10⁴ candidates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefuteProgress {
    pub tried: u64,
    pub pruned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

const PROGRESS_EVERY: u64 = 10_000;
const TABLE_CHUNK: usize = 2_048;

pub fn refute_bounded(target: &LinearGrammar, config: &RefuterConfig) -> Result<RefuterOutcome> {
    refute_bounded_with_progress(target, config, None)
}

pub fn refute_bounded_with_progress(
    target: &LinearGrammar,
    config: &RefuterConfig,
    progress: Option<&(dyn Fn(&RefuteProgress) + Sync)>,
) -> Result<RefuterOutcome> {
    let max_len = config.max_len;
    let target_by_len = target.enumerate_by_length_with_cap(max_len, max_len)?;
    let target_counts: Vec<u64> = target_by_len.iter().map(|ws| ws.len() as u64).collect();
    let target_sets: Vec<BTreeSet<&str>> = target_by_len
        .iter()
        .map(|ws| ws.iter().map(|w| w.as_str()).collect())
        .collect();

    let proc_alphabet = Alphabet::directions();
    let proc_candidates: Vec<Candidate> =
        enumerate_candidates(config.max_proc_states, &proc_alphabet, max_len);

    let core_chars: Vec<char> = config.core_alphabet.chars().collect();
    let proc_chars: Vec<char> = proc_alphabet.chars().collect();

    let search = Search {
        target_counts: &target_counts,
        target_sets: &target_sets,
        max_len,
        core_chars: &core_chars,
        proc_chars: &proc_chars,
        procs: &proc_candidates,
    };

    let started = Instant::now();
    let mut total = SearchStats::new(max_len);
    let mut witness: Option<FSystem> = None;

    'sizes: for states in 1..=config.max_core_states {
        let mut tables = CanonicalTables::new(states, core_chars.len());
        loop {
            let chunk: Vec<Vec<Vec<usize>>> = tables.by_ref().take(TABLE_CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let results: Vec<TableOutcome> = chunk
                .par_iter()
                .map(|table| search.evaluate_table(table, &config.core_alphabet))
                .collect();
            for outcome in results {
                let tried_before = total.tried;
                total.absorb(&outcome.stats);
                if let Some(callback) = progress {
                    if total.tried / PROGRESS_EVERY > tried_before / PROGRESS_EVERY {
                        callback(&RefuteProgress {
                            tried: total.tried,
                            pruned: total.pruned(),
                            elapsed: started.elapsed(),
                        });
                    }
                }
                if let Some(phi) = outcome.witness {
                    witness = Some(phi);
                    break 'sizes;
                }
            }
        }
    }

    let verdict = match witness {
        Some(phi) => {
            let check = bounded_equiv(&phi, target, max_len)?;
            assert!(
                check.equivalent(),
                "search invariant: a reported witness passes the bounded comparison"
            );
            Verdict::Found(phi)
        }
        None => Verdict::Refuted,
    };
    Ok(RefuterOutcome {
        verdict,
        candidates_tried: total.tried,
        prune_stats: total.pruned_at,
    })
}

#[derive(Debug, Clone)]
struct SearchStats {
    tried: u64,
    pruned_at: Vec<u64>,
}

impl SearchStats {
    fn new(max_len: usize) -> Self {
        SearchStats {
            tried: 0,
            pruned_at: vec![0; max_len + 1],
        }
    }

    fn pruned(&self) -> u64 {
        self.pruned_at.iter().sum()
    }

    fn absorb(&mut self, other: &SearchStats) {
        self.tried += other.tried;
        for (a, b) in self.pruned_at.iter_mut().zip(&other.pruned_at) {
            *a += b;
        }
    }
}

struct TableOutcome {
    stats: SearchStats,
    witness: Option<FSystem>,
}

struct Search<'a> {
    target_counts: &'a [u64],
    target_sets: &'a [BTreeSet<&'a str>],
    max_len: usize,
    core_chars: &'a [char],
    proc_chars: &'a [char],
    procs: &'a [Candidate],
}

impl Search<'_> {
    /// Evaluates every accepting-set assignment of one core table against
    /// every procedure candidate, in canonical order, stopping at the
    /// first witness.
    fn evaluate_table(&self, table: &[Vec<usize>], core_alphabet: &Alphabet) -> TableOutcome {
        let mut stats = SearchStats::new(self.max_len);
        let states = table.len();
        let counts_by_state = state_counts(table, self.max_len);
        for accept_mask in 0u32..(1 << states) {
            let counts: Vec<u64> = counts_by_state
                .iter()
                .map(|row| {
                    (0..states)
                        .filter(|&s| accept_mask >> s & 1 == 1)
                        .map(|s| row[s])
                        .sum()
                })
                .collect();

            // Core-level prune: wherever the target is inhabited the core
            // must be, with no more words than the target (folding by a
            // fixed direction word is injective).
            let core_fail = (0..=self.max_len).find(|&n| {
                self.target_counts[n] > 0
                    && (counts[n] == 0 || counts[n] > self.target_counts[n])
            });
            if let Some(n) = core_fail {
                stats.pruned_at[n] += self.procs.len() as u64;
                stats.tried += self.procs.len() as u64;
                continue;
            }

            let mut core_words: Vec<Option<Vec<String>>> = vec![None; self.max_len + 1];
            for proc in self.procs {
                stats.tried += 1;
                match self.check_pair(table, accept_mask, &counts, &mut core_words, proc) {
                    Err(n) => stats.pruned_at[n] += 1,
                    Ok(()) => {
                        let core = build_dfa(core_alphabet, table, accept_mask);
                        let procedure =
                            build_dfa(&Alphabet::directions(), &proc.table, proc.accept_mask);
                        let phi = FSystem::new(core, procedure)
                            .expect("procedure candidates range over {u, d}");
                        return TableOutcome {
                            stats,
                            witness: Some(phi),
                        };
                    }
                }
            }
        }
        TableOutcome {
            stats,
            witness: None,
        }
    }

    /// The per-pair ladder. Returns the first length at which the pair is
    /// ruled out.
    fn check_pair(
        &self,
        table: &[Vec<usize>],
        accept_mask: u32,
        core_counts: &[u64],
        core_words: &mut [Option<Vec<String>>],
        proc: &Candidate,
    ) -> std::result::Result<(), usize> {
        for n in 0..=self.max_len {
            let both = core_counts[n] > 0 && proc.counts[n] > 0;
            let t = self.target_counts[n];
            if t == 0 {
                if both {
                    return Err(n);
                }
                continue;
            }
            if !both {
                return Err(n);
            }
            if core_counts[n].saturating_mul(proc.counts[n]) < t {
                return Err(n);
            }
            let words = core_words[n]
                .get_or_insert_with(|| words_of_length(table, accept_mask, self.core_chars, n));
            let proc_words = proc.words[n].get_or_init(|| {
                words_of_length(&proc.table, proc.accept_mask, self.proc_chars, n)
            });
            let target_set = &self.target_sets[n];
            let mut folded = BTreeSet::new();
            for v in proc_words {
                let dirs: DirectionWord = v.parse().expect("direction word");
                let perm = fold_permutation(&dirs);
                for w in words.iter() {
                    let image = perm.apply(w).expect("equal lengths");
                    if !target_set.contains(image.as_str()) {
                        return Err(n);
                    }
                    folded.insert(image);
                }
            }
            if folded.len() as u64 != t {
                return Err(n);
            }
        }
        Ok(())
    }
}

/// One enumerated automaton with its length spectra and lazily
/// materialized per-length word lists.
struct Candidate {
    table: Vec<Vec<usize>>,
    accept_mask: u32,
    counts: Vec<u64>,
    words: Vec<OnceLock<Vec<String>>>,
}

fn enumerate_candidates(max_states: usize, alphabet: &Alphabet, max_len: usize) -> Vec<Candidate> {
    let mut out = Vec::new();
    for states in 1..=max_states {
        for table in CanonicalTables::new(states, alphabet.len()) {
            let counts_by_state = state_counts(&table, max_len);
            for accept_mask in 0u32..(1 << states) {
                let counts = counts_by_state
                    .iter()
                    .map(|row| {
                        (0..states)
                            .filter(|&s| accept_mask >> s & 1 == 1)
                            .map(|s| row[s])
                            .sum()
                    })
                    .collect();
                out.push(Candidate {
                    table: table.clone(),
                    accept_mask,
                    counts,
                    words: (0..=max_len).map(|_| OnceLock::new()).collect(),
                });
            }
        }
    }
    out
}

/// `result[n][s]` = number of length-`n` paths from state 0 to state `s`.
fn state_counts(table: &[Vec<usize>], max_len: usize) -> Vec<Vec<u64>> {
    let states = table.len();
    let mut rows = Vec::with_capacity(max_len + 1);
    let mut current = vec![0u64; states];
    current[0] = 1;
    rows.push(current.clone());
    for _ in 0..max_len {
        let mut next = vec![0u64; states];
        for (s, row) in table.iter().enumerate() {
            if current[s] == 0 {
                continue;
            }
            for &t in row {
                next[t] += current[s];
            }
        }
        rows.push(next.clone());
        current = next;
    }
    rows
}

/// Accepted words of length exactly `n`, in alphabet order, straight off a
/// raw transition table.
fn words_of_length(
    table: &[Vec<usize>],
    accept_mask: u32,
    chars: &[char],
    n: usize,
) -> Vec<String> {
    let states = table.len();
    let accepting: Vec<bool> = (0..states).map(|s| accept_mask >> s & 1 == 1).collect();
    let mut can = vec![accepting.clone()];
    for r in 1..=n {
        let prev = &can[r - 1];
        can.push(
            (0..states)
                .map(|s| table[s].iter().any(|&t| prev[t]))
                .collect(),
        );
    }
    let mut out = Vec::new();
    let mut word = String::new();
    emit_words(
        table, chars, &can, &accepting, 0, n, &mut word, &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn emit_words(
    table: &[Vec<usize>],
    chars: &[char],
    can: &[Vec<bool>],
    accepting: &[bool],
    state: usize,
    remaining: usize,
    word: &mut String,
    out: &mut Vec<String>,
) {
    if remaining == 0 {
        if accepting[state] {
            out.push(word.clone());
        }
        return;
    }
    for (k, &ch) in chars.iter().enumerate() {
        let next = table[state][k];
        if can[remaining - 1][next] {
            word.push(ch);
            emit_words(table, chars, can, accepting, next, remaining - 1, word, out);
            word.pop();
        }
    }
}

fn build_dfa(alphabet: &Alphabet, table: &[Vec<usize>], accept_mask: u32) -> Dfa {
    let accepting: Vec<usize> = (0..table.len())
        .filter(|&s| accept_mask >> s & 1 == 1)
        .collect();
    Dfa::new(alphabet.clone(), table.to_vec(), 0, accepting)
        .expect("enumerated tables are well formed")
}

/// Streams every total transition table with exactly `states` states in
/// canonical breadth-first form, in lexicographic order of the flattened
/// table.
struct CanonicalTables {
    states: usize,
    symbols: usize,
    /// Flattened entries filled so far; `entries[q * symbols + s] = δ(q, s)`.
    entries: Vec<usize>,
    /// `introduced[p]` = number of states introduced before position `p`.
    introduced: Vec<usize>,
    exhausted: bool,
}

impl CanonicalTables {
    fn new(states: usize, symbols: usize) -> Self {
        CanonicalTables {
            states,
            symbols,
            entries: Vec::new(),
            introduced: vec![1],
            exhausted: false,
        }
    }

    fn slots(&self) -> usize {
        self.states * self.symbols
    }

    /// Whether `value` may be placed at position `p`: values never skip
    /// ahead of the introduction order, each row belongs to an already
    /// introduced state, and enough slots remain to introduce the rest.
    fn admissible(&self, p: usize, value: usize) -> bool {
        let introduced = self.introduced[p];
        let row = p / self.symbols;
        if row >= introduced {
            return false;
        }
        if value > introduced || value >= self.states {
            return false;
        }
        let introduced_after = if value == introduced {
            introduced + 1
        } else {
            introduced
        };
        let remaining_slots = self.slots() - p - 1;
        let missing = self.states - introduced_after;
        missing <= remaining_slots
    }

    fn push(&mut self, value: usize) {
        let p = self.entries.len();
        let introduced = self.introduced[p];
        self.entries.push(value);
        self.introduced.push(if value == introduced {
            introduced + 1
        } else {
            introduced
        });
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.symbols)
            .map(|row| row.to_vec())
            .collect()
    }

    /// Pops trailing entries until one can be bumped to its next
    /// admissible value; returns `false` when the space is exhausted.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.entries.pop() {
            self.introduced.pop();
            let p = self.entries.len();
            if let Some(v) = (last + 1..self.states).find(|&v| self.admissible(p, v)) {
                self.push(v);
                return true;
            }
        }
        false
    }
}

impl Iterator for CanonicalTables {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.exhausted {
            return None;
        }
        if self.symbols == 0 {
            // Only the one-state automaton exists over an empty alphabet.
            self.exhausted = true;
            return (self.states == 1).then(|| vec![Vec::new()]);
        }
        loop {
            if self.entries.len() == self.slots() {
                // The admissibility rule guarantees all states were
                // introduced by the last slot.
                let table = self.table();
                if !self.advance() {
                    self.exhausted = true;
                }
                return Some(table);
            }
            let p = self.entries.len();
            match (0..self.states).find(|&v| self.admissible(p, v)) {
                Some(v) => self.push(v),
                None => {
                    if !self.advance() {
                        self.exhausted = true;
                        return None;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile_regex;
    use crate::properties::separation_language;

    #[test]
    fn canonical_table_counts() {
        // Two states over a binary alphabet: 3 first rows that introduce
        // state 1, times 4 second rows.
        assert_eq!(CanonicalTables::new(2, 2).count(), 12);
        assert_eq!(CanonicalTables::new(1, 2).count(), 1);
        assert_eq!(CanonicalTables::new(1, 3).count(), 1);
        // Two states, one symbol: only [[1],[0]] and [[1],[1]].
        assert_eq!(CanonicalTables::new(2, 1).count(), 2);
        // Three states, one symbol: the chain 0→1→2 with a free last entry.
        assert_eq!(CanonicalTables::new(3, 1).count(), 3);
    }

    #[test]
    fn canonical_tables_reach_every_state() {
        for table in CanonicalTables::new(3, 2) {
            let mut introduced = 1;
            for (q, row) in table.iter().enumerate() {
                assert!(q < introduced, "row {q} of an unintroduced state");
                for &v in row {
                    assert!(v <= introduced);
                    if v == introduced {
                        introduced += 1;
                    }
                }
            }
            assert_eq!(introduced, 3);
        }
    }

    #[test]
    fn epsilon_target_needs_two_core_states() {
        let target = LinearGrammar::parse("start S\nS -> eps\n").unwrap();
        let sigma = Alphabet::new(['a']).unwrap();

        // One total state over {a} can only express {} or a*, so the
        // bounded search refutes.
        let small = RefuterConfig::new(1, 1, 3, sigma.clone()).unwrap();
        let outcome = refute_bounded(&target, &small).unwrap();
        assert_eq!(outcome.verdict, Verdict::Refuted);
        assert!(outcome.candidates_tried > 0);

        // With two states {ε} becomes expressible and a witness exists.
        let roomy = RefuterConfig::new(2, 2, 3, sigma).unwrap();
        let outcome = refute_bounded(&target, &roomy).unwrap();
        let phi = outcome.verdict.witness().expect("witness within bounds");
        assert_eq!(phi.bounded_language(3).unwrap(), vec!["".to_string()]);
    }

    #[test]
    fn refutes_the_separation_language_at_two_states() {
        let target = separation_language();
        let sigma = Alphabet::new(['a', 'b', 'c', 'd', 'e', 'f', '#']).unwrap();
        let config = RefuterConfig::new(2, 2, 7, sigma).unwrap();
        let outcome = refute_bounded(&target, &config).unwrap();
        assert_eq!(outcome.verdict, Verdict::Refuted);
        assert!(outcome.candidates_tried > 0);
    }

    #[test]
    fn finds_the_generating_system() {
        let core = compile_regex("(abc)*", None).unwrap();
        let dirs = Alphabet::directions();
        let procedure = compile_regex("(udd)*", Some(&dirs)).unwrap();
        let target = crate::linear_grammar::compile_automata(&core, &procedure).unwrap();
        let sigma = Alphabet::new(['a', 'b', 'c']).unwrap();
        let config = RefuterConfig::new(4, 4, 9, sigma).unwrap();
        let outcome = refute_bounded(&target, &config).unwrap();
        let phi = outcome.verdict.witness().expect("the generator is in bounds");
        let report = bounded_equiv(phi, &target, 9).unwrap();
        assert!(report.equivalent());
    }

    #[test]
    fn monotone_in_bounds() {
        let target = LinearGrammar::parse("start S\nS -> eps\n").unwrap();
        let sigma = Alphabet::new(['a']).unwrap();
        for (s, p) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let config = RefuterConfig::new(s, p, 3, sigma.clone()).unwrap();
            let outcome = refute_bounded(&target, &config).unwrap();
            assert!(outcome.verdict.witness().is_some(), "bounds ({s},{p})");
        }
    }

    #[test]
    fn config_validation() {
        let sigma = Alphabet::new(['a']).unwrap();
        assert!(RefuterConfig::new(0, 1, 3, sigma.clone()).is_err());
        assert!(RefuterConfig::new(1, 1, 15, sigma).is_err());
    }
}
