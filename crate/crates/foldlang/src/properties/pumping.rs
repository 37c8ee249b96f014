//! Synchronized pumping decompositions.
//!
//! Running the core and procedure automata side by side over an
//! equal-length prefix pair assigns a state pair to every position. Once
//! the prefixes are longer than the product of the two state counts, some
//! pair repeats; the stretch between the first repeat delimits loops that
//! can be pumped in both automata simultaneously.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::folding::DirectionWord;

/// A simultaneous loop in the core and procedure automata:
/// `w1 = x1 y1 z1` and `v1 = x2 y2 z2` with `|x1| = |x2|`,
/// `|y1| = |y2| > 0`, `|z1| = |z2|`. The core automaton reaches the same
/// state after `x1` and `x1 y1`, and likewise the procedure automaton
/// after `x2` and `x2 y2`, so `x1 y1ᵏ z1` and `x2 y2ᵏ z2` stay synchronized
/// for every `k ≥ 0`.
///
/// Whether `w1` and `v1` are prefixes of members of the two languages is
/// the caller's obligation and is not checked here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PumpDecomposition {
    pub x1: String,
    pub y1: String,
    pub z1: String,
    pub x2: DirectionWord,
    pub y2: DirectionWord,
    pub z2: DirectionWord,
    /// State count of the core automaton (N1).
    pub state_count_core: usize,
    /// State count of the procedure automaton (N2).
    pub state_count_proc: usize,
    /// N1 · N2; the repeating pair occurs within the first `bound + 1`
    /// positions.
    pub bound: usize,
}

impl PumpDecomposition {
    /// `x1 y1ᵏ z1`.
    pub fn pumped_word(&self, k: usize) -> String {
        let mut out = self.x1.clone();
        for _ in 0..k {
            out.push_str(&self.y1);
        }
        out.push_str(&self.z1);
        out
    }

    /// `x2 y2ᵏ z2`.
    pub fn pumped_dirs(&self, k: usize) -> DirectionWord {
        let mut directions = self.x2.directions().to_vec();
        for _ in 0..k {
            directions.extend_from_slice(self.y2.directions());
        }
        directions.extend_from_slice(self.z2.directions());
        DirectionWord::new(directions)
    }
}

impl fmt::Display for PumpDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "x1 = {:?}", self.x1)?;
        writeln!(f, "y1 = {:?}", self.y1)?;
        writeln!(f, "z1 = {:?}", self.z1)?;
        writeln!(f, "x2 = {}", display_dirs(&self.x2))?;
        writeln!(f, "y2 = {}", display_dirs(&self.y2))?;
        writeln!(f, "z2 = {}", display_dirs(&self.z2))?;
        writeln!(
            f,
            "states: core {} x proc {} (bound {})",
            self.state_count_core, self.state_count_proc, self.bound
        )?;
        write!(f, "note: prefix membership is the caller's obligation")
    }
}

fn display_dirs(dirs: &DirectionWord) -> String {
    if dirs.is_empty() {
        "\"\"".to_string()
    } else {
        dirs.to_string()
    }
}

/// Finds the leftmost repeated state pair (smallest loop on ties) along
/// `w1` and `v1` and splits both accordingly.
pub fn pump_decompose(
    core: &Dfa,
    procedure: &Dfa,
    w1: &str,
    v1: &DirectionWord,
) -> Result<PumpDecomposition> {
    let chars: Vec<char> = w1.chars().collect();
    if chars.len() != v1.len() {
        return Err(Error::LengthMismatch {
            left: chars.len(),
            right: v1.len(),
        });
    }
    let bound = core.state_count() * procedure.state_count();
    if chars.len() <= bound {
        return Err(Error::TooShort {
            length: chars.len(),
            bound,
        });
    }

    // State pair after each prefix length, positions 0..=n.
    let mut pairs = Vec::with_capacity(chars.len() + 1);
    let mut core_state = core.start();
    let mut proc_state = procedure.start();
    pairs.push((core_state, proc_state));
    for (ch, dir) in chars.iter().zip(v1.directions()) {
        core_state = core
            .step(core_state, *ch)
            .ok_or_else(|| Error::AlphabetMismatch {
                message: format!("symbol {ch:?} is not in the core alphabet"),
            })?;
        proc_state = procedure
            .step(proc_state, dir.as_char())
            .expect("direction symbols are in the procedure alphabet");
        pairs.push((core_state, proc_state));
    }

    let (i, j) = first_repeat(&pairs).expect("pigeonhole: more positions than state pairs");
    debug_assert!(j <= bound);

    let take = |from: usize, to: usize| -> String { chars[from..to].iter().collect() };
    let dirs = v1.directions();
    Ok(PumpDecomposition {
        x1: take(0, i),
        y1: take(i, j),
        z1: take(j, chars.len()),
        x2: DirectionWord::new(dirs[0..i].to_vec()),
        y2: DirectionWord::new(dirs[i..j].to_vec()),
        z2: DirectionWord::new(dirs[j..].to_vec()),
        state_count_core: core.state_count(),
        state_count_proc: procedure.state_count(),
        bound,
    })
}

fn first_repeat(pairs: &[(usize, usize)]) -> Option<(usize, usize)> {
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pairs[j] == pairs[i] {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile_regex, Alphabet};

    #[test]
    fn single_state_automata_repeat_immediately() {
        let core = compile_regex("a*", None).unwrap();
        let procedure = compile_regex("d*", None).unwrap();
        let dirs: DirectionWord = "dd".parse().unwrap();
        let d = pump_decompose(&core, &procedure, "aa", &dirs).unwrap();
        assert_eq!(d.x1, "");
        assert_eq!(d.y1, "a");
        assert_eq!(d.z1, "a");
        assert_eq!(d.y2.to_string(), "d");
        assert_eq!(d.bound, 1);
    }

    #[test]
    fn too_short_prefix() {
        let core = compile_regex("(abc)*", None).unwrap();
        let dirs_alpha = Alphabet::directions();
        let procedure = compile_regex("(udd)*", Some(&dirs_alpha)).unwrap();
        let dirs: DirectionWord = "udd".parse().unwrap();
        assert!(matches!(
            pump_decompose(&core, &procedure, "abc", &dirs),
            Err(Error::TooShort { length: 3, bound: 16 })
        ));
    }

    #[test]
    fn synchronized_loop_on_the_cycles() {
        let core = compile_regex("(abc)*", None).unwrap();
        let dirs_alpha = Alphabet::directions();
        let procedure = compile_regex("(udd)*", Some(&dirs_alpha)).unwrap();
        assert_eq!(core.state_count(), 4);
        assert_eq!(procedure.state_count(), 4);

        let w1 = "abc".repeat(6);
        let v1: DirectionWord = "udd".repeat(6).parse().unwrap();
        let d = pump_decompose(&core, &procedure, &w1, &v1).unwrap();
        assert!(!d.y1.is_empty());
        assert_eq!(d.y1.chars().count(), d.y2.len());
        assert_eq!(d.y1.chars().count() % 3, 0);

        let core_anchor = core.run(&d.pumped_word(1)).unwrap();
        let proc_anchor = procedure.run(&d.pumped_dirs(1).to_string()).unwrap();
        for k in 0..=3 {
            assert_eq!(core.run(&d.pumped_word(k)).unwrap(), core_anchor, "k={k}");
            assert_eq!(
                procedure.run(&d.pumped_dirs(k).to_string()).unwrap(),
                proc_anchor,
                "k={k}"
            );
        }
    }

    #[test]
    fn length_mismatch() {
        let core = compile_regex("a*", None).unwrap();
        let procedure = compile_regex("d*", None).unwrap();
        let dirs: DirectionWord = "d".parse().unwrap();
        assert!(matches!(
            pump_decompose(&core, &procedure, "aa", &dirs),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
