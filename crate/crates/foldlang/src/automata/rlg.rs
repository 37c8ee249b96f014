//! Right-linear grammars in normal form: every rule is either `A → aB` or
//! `A → ε`. This is the grammar shape the product construction consumes;
//! anything looser (single-terminal rules `A → a`, unit rules `A → B`,
//! longer prefixes) is normalized away on conversion.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::alphabet::Alphabet;
use super::dfa::Dfa;
use super::nfa::Nfa;
use crate::error::{Error, Result};
use crate::linear_grammar::LinearGrammar;

/// A step rule `A → aB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RlgStep {
    pub from: usize,
    pub symbol: char,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightLinearGrammar {
    nonterminals: Vec<String>,
    terminals: Alphabet,
    steps: Vec<RlgStep>,
    finals: BTreeSet<usize>,
    start: usize,
}

impl RightLinearGrammar {
    pub fn new(
        nonterminals: Vec<String>,
        terminals: Alphabet,
        steps: Vec<RlgStep>,
        finals: impl IntoIterator<Item = usize>,
        start: usize,
    ) -> Result<Self> {
        let n = nonterminals.len();
        if start >= n {
            return Err(Error::Precondition {
                message: "start nonterminal out of range".to_string(),
            });
        }
        for step in &steps {
            if step.from >= n || step.to >= n {
                return Err(Error::Precondition {
                    message: "rule references an undeclared nonterminal".to_string(),
                });
            }
            if !terminals.contains(step.symbol) {
                return Err(Error::AlphabetMismatch {
                    message: format!("rule symbol {:?} is not a declared terminal", step.symbol),
                });
            }
        }
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if finals.iter().any(|&f| f >= n) {
            return Err(Error::Precondition {
                message: "ε-rule references an undeclared nonterminal".to_string(),
            });
        }
        Ok(RightLinearGrammar {
            nonterminals,
            terminals,
            steps,
            finals,
            start,
        })
    }

    /// Grammar of the DFA's language, with one nonterminal per live state
    /// (reachable and able to reach an accepting state). Dead states and
    /// the transitions into them are dropped; the start nonterminal is
    /// always kept, so the empty language yields a start symbol with no
    /// rules. Nonterminals are named `<prefix>0`, `<prefix>1`, … in state
    /// order.
    pub fn from_dfa(dfa: &Dfa, prefix: &str) -> Self {
        let n = dfa.state_count();
        // Every state is reachable (canonical form); find co-reachable ones.
        let mut alive = vec![false; n];
        let mut queue: VecDeque<usize> = dfa.accepting_states().collect();
        for &s in &queue {
            alive[s] = true;
        }
        let mut preds = vec![Vec::new(); n];
        for s in 0..n {
            for ch in dfa.alphabet().chars() {
                let t = dfa.step(s, ch).expect("alphabet symbol");
                preds[t].push(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &p in &preds[s] {
                if !alive[p] {
                    alive[p] = true;
                    queue.push_back(p);
                }
            }
        }

        // The start nonterminal is kept even when dead; dead states get no
        // rules at all.
        let kept = |s: usize| alive[s] || s == dfa.start();
        let mut index = vec![usize::MAX; n];
        let mut nonterminals = Vec::new();
        for s in 0..n {
            if kept(s) {
                index[s] = nonterminals.len();
                nonterminals.push(format!("{prefix}{}", nonterminals.len()));
            }
        }
        let mut steps = Vec::new();
        let mut finals = BTreeSet::new();
        for s in 0..n {
            if !alive[s] {
                continue;
            }
            if dfa.is_accepting(s) {
                finals.insert(index[s]);
            }
            for ch in dfa.alphabet().chars() {
                let t = dfa.step(s, ch).expect("alphabet symbol");
                if alive[t] {
                    steps.push(RlgStep {
                        from: index[s],
                        symbol: ch,
                        to: index[t],
                    });
                }
            }
        }
        RightLinearGrammar {
            nonterminals,
            terminals: dfa.alphabet().clone(),
            steps,
            finals,
            start: index[dfa.start()],
        }
    }

    /// The DFA of the grammar's language (subset construction over the
    /// grammar viewed as an automaton, then minimized).
    pub fn to_dfa(&self) -> Dfa {
        let mut nfa = Nfa::new();
        for _ in 0..self.nonterminals.len() {
            nfa.add_state();
        }
        for step in &self.steps {
            nfa.add_edge(step.from, step.symbol, step.to);
        }
        nfa.set_start(self.start);
        for &f in &self.finals {
            nfa.set_accepting(f);
        }
        nfa.determinize(&self.terminals)
    }

    /// Normalizes a general right-linear grammar. Accepts rules of the
    /// forms `A → u`, `A → uB` (`u` any terminal string, including ε);
    /// longer prefixes are split through fresh nonterminals and unit rules
    /// are eliminated by closure. Fails when some rule has terminals to the
    /// right of a nonterminal.
    pub fn from_linear(grammar: &LinearGrammar) -> Result<Self> {
        if !grammar.is_right_linear() {
            return Err(Error::NotRightLinear {
                message: "a rule has terminals after its nonterminal".to_string(),
            });
        }
        let names = grammar.nonterminal_names();
        let mut nonterminals: Vec<String> = names.to_vec();
        let mut steps = Vec::new();
        let mut finals = BTreeSet::new();
        let mut units: Vec<(usize, usize)> = Vec::new();
        let mut fresh = 0usize;
        let fresh_name = |nonterminals: &mut Vec<String>, fresh: &mut usize| {
            loop {
                let name = format!("_q{}", *fresh);
                *fresh += 1;
                if !nonterminals.contains(&name) {
                    nonterminals.push(name);
                    return nonterminals.len() - 1;
                }
            }
        };
        // Shared chain terminator for terminal-only rules.
        let mut end: Option<usize> = None;
        for rule in grammar.rules() {
            let prefix: Vec<char> = rule.prefix.chars().collect();
            let target = rule.inner;
            if prefix.is_empty() {
                match target {
                    Some(to) => units.push((rule.lhs, to)),
                    None => {
                        finals.insert(rule.lhs);
                    }
                }
                continue;
            }
            let mut cur = rule.lhs;
            for (i, &ch) in prefix.iter().enumerate() {
                let last = i + 1 == prefix.len();
                let next = if last {
                    match target {
                        Some(to) => to,
                        None => *end
                            .get_or_insert_with(|| {
                                let id = fresh_name(&mut nonterminals, &mut fresh);
                                finals.insert(id);
                                id
                            }),
                    }
                } else {
                    fresh_name(&mut nonterminals, &mut fresh)
                };
                steps.push(RlgStep {
                    from: cur,
                    symbol: ch,
                    to: next,
                });
                cur = next;
            }
        }
        // Unit closure: A → B makes A inherit B's steps and finality.
        let n = nonterminals.len();
        let mut reach = vec![BTreeSet::new(); n];
        for (a, _) in units.iter() {
            let mut seen = BTreeSet::from([*a]);
            let mut queue = VecDeque::from([*a]);
            while let Some(x) = queue.pop_front() {
                for &(f, t) in &units {
                    if f == x && seen.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
            reach[*a] = seen;
        }
        let base_steps = steps.clone();
        let base_finals = finals.clone();
        for a in 0..n {
            for &b in &reach[a] {
                if b == a {
                    continue;
                }
                for step in &base_steps {
                    if step.from == b {
                        steps.push(RlgStep {
                            from: a,
                            symbol: step.symbol,
                            to: step.to,
                        });
                    }
                }
                if base_finals.contains(&b) {
                    finals.insert(a);
                }
            }
        }
        RightLinearGrammar::new(
            nonterminals,
            grammar.terminals().clone(),
            steps,
            finals,
            grammar.start(),
        )
    }

    /// The same grammar with a different start symbol.
    pub fn start_variant(&self, name: &str) -> Result<Self> {
        let start = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownNonterminal {
                name: name.to_string(),
            })?;
        let mut out = self.clone();
        out.start = start;
        Ok(out)
    }

    pub fn nonterminal_names(&self) -> &[String] {
        &self.nonterminals
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

    pub fn steps(&self) -> &[RlgStep] {
        &self.steps
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().copied()
    }

    pub fn is_final(&self, nt: usize) -> bool {
        self.finals.contains(&nt)
    }

    pub fn name(&self, nt: usize) -> &str {
        &self.nonterminals[nt]
    }
}

impl fmt::Display for RightLinearGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {}", self.start_name())?;
        for (id, name) in self.nonterminals.iter().enumerate() {
            let mut alts: Vec<String> = Vec::new();
            if self.finals.contains(&id) {
                alts.push("eps".to_string());
            }
            for step in &self.steps {
                if step.from == id {
                    alts.push(format!("{} {}", step.symbol, self.nonterminals[step.to]));
                }
            }
            if !alts.is_empty() {
                writeln!(f, "{} -> {}", name, alts.join(" | "))?;
            }
        }
        Ok(())
    }
}
