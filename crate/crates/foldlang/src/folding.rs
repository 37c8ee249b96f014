//! The word folding operation and its permutation view.
//!
//! Folding rearranges a word `w` under the control of an equal-length
//! direction word `v` over `{u, d}`: scanning positions left to right, the
//! symbol `w[i]` is prepended to the accumulator when `v[i] = u` ("fold
//! up") and appended when `v[i] = d` ("fold down"). The operation is
//! undefined when the lengths differ.
//!
//! For a fixed direction word the operation is a positional bijection,
//! captured by [`FoldPermutation`].

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One folding direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `u`: prepend the next symbol.
    Up,
    /// `d`: append the next symbol.
    Down,
}

impl Direction {
    pub fn from_char(ch: char) -> Option<Direction> {
        match ch {
            'u' => Some(Direction::Up),
            'd' => Some(Direction::Down),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Direction::Up => 'u',
            Direction::Down => 'd',
        }
    }
}

/// A sequence of folding directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DirectionWord(Vec<Direction>);

impl DirectionWord {
    pub fn new(directions: Vec<Direction>) -> Self {
        DirectionWord(directions)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.0
    }
}

impl FromStr for DirectionWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut directions = Vec::with_capacity(s.len());
        for (offset, ch) in s.char_indices() {
            match Direction::from_char(ch) {
                Some(d) => directions.push(d),
                None => {
                    return Err(Error::Parse {
                        position: offset,
                        message: format!("direction words use only 'u' and 'd', found {ch:?}"),
                    })
                }
            }
        }
        Ok(DirectionWord(directions))
    }
}

impl fmt::Display for DirectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for DirectionWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DirectionWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Folds `word` under `dirs`. Fails with [`Error::LengthMismatch`] when the
/// lengths differ.
pub fn fold(word: &str, dirs: &DirectionWord) -> Result<String> {
    let chars: Vec<char> = word.chars().collect();
    check_lengths(chars.len(), dirs.len())?;
    let mut acc: VecDeque<char> = VecDeque::with_capacity(chars.len());
    for (ch, dir) in chars.into_iter().zip(dirs.directions()) {
        match dir {
            Direction::Up => acc.push_front(ch),
            Direction::Down => acc.push_back(ch),
        }
    }
    Ok(acc.into_iter().collect())
}

/// Recovers the unique `w` with `fold(w, dirs) = folded`.
pub fn unfold(folded: &str, dirs: &DirectionWord) -> Result<String> {
    let chars: Vec<char> = folded.chars().collect();
    check_lengths(chars.len(), dirs.len())?;
    let perm = fold_permutation(dirs);
    Ok((0..chars.len())
        .map(|i| chars[perm.target_of[i] - 1])
        .collect())
}

fn check_lengths(word: usize, dirs: usize) -> Result<()> {
    if word != dirs {
        return Err(Error::LengthMismatch {
            left: word,
            right: dirs,
        });
    }
    Ok(())
}

/// The positional bijection induced by a direction word: entry `i`
/// (1-based input position) names the 1-based output position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPermutation {
    target_of: Vec<usize>,
}

impl FoldPermutation {
    pub fn len(&self) -> usize {
        self.target_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target_of.is_empty()
    }

    /// 1-based output positions, indexed by 0-based input position.
    pub fn target_of(&self) -> &[usize] {
        &self.target_of
    }

    /// Places `word[i]` at output position `target_of[i]`; equals folding
    /// by the direction word this permutation came from.
    pub fn apply(&self, word: &str) -> Result<String> {
        let chars: Vec<char> = word.chars().collect();
        check_lengths(chars.len(), self.len())?;
        let mut out = vec!['\0'; chars.len()];
        for (i, &target) in self.target_of.iter().enumerate() {
            out[target - 1] = chars[i];
        }
        Ok(out.into_iter().collect())
    }

    pub fn inverse(&self) -> FoldPermutation {
        let mut target_of = vec![0; self.len()];
        for (i, &target) in self.target_of.iter().enumerate() {
            target_of[target - 1] = i + 1;
        }
        FoldPermutation { target_of }
    }

    pub fn is_identity(&self) -> bool {
        self.target_of.iter().enumerate().all(|(i, &t)| t == i + 1)
    }
}

impl Serialize for FoldPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        // The base is stated explicitly so consumers cannot misread the
        // positions.
        let mut s = serializer.serialize_struct("FoldPermutation", 2)?;
        s.serialize_field("base", &1u8)?;
        s.serialize_field("target_of", &self.target_of)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for FoldPermutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            base: u8,
            target_of: Vec<usize>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.base != 1 {
            return Err(D::Error::custom("fold permutations are 1-based"));
        }
        let n = raw.target_of.len();
        let mut seen = vec![false; n];
        for &t in &raw.target_of {
            if t == 0 || t > n || seen[t - 1] {
                return Err(D::Error::custom("target_of is not a bijection on 1..=n"));
            }
            seen[t - 1] = true;
        }
        Ok(FoldPermutation {
            target_of: raw.target_of,
        })
    }
}

/// The permutation realized by folding with `dirs`.
pub fn fold_permutation(dirs: &DirectionWord) -> FoldPermutation {
    // Fold the 1-based position indices themselves; the resulting sequence
    // tells which input position each output slot holds.
    let mut seq: VecDeque<usize> = VecDeque::with_capacity(dirs.len());
    for (i, dir) in dirs.directions().iter().enumerate() {
        match dir {
            Direction::Up => seq.push_front(i + 1),
            Direction::Down => seq.push_back(i + 1),
        }
    }
    let mut target_of = vec![0; dirs.len()];
    for (slot, &input) in seq.iter().enumerate() {
        target_of[input - 1] = slot + 1;
    }
    FoldPermutation { target_of }
}
