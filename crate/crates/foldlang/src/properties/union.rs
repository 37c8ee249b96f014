//! Union non-closure demonstration.
//!
//! The union of the bounded languages of `((abc)*, (udd)*)` and
//! `((edf)*, (uud)*)` is exactly `{aⁿ(bc)ⁿ} ∪ {(de)ⁿfⁿ}`, yet it differs
//! from the separating language, whose words all carry a `#` marker.
//! Both comparisons are computed exactly and reported.

use serde::{Deserialize, Serialize};

use crate::automata::{compile_regex, Alphabet, DEFAULT_ENUM_CAP};
use crate::error::Result;
use crate::fsystem::{diff_word_lists, FSystem};
use crate::properties::separation_language;

/// Both comparisons of [`union_demo`]. The `missing`/`extra` naming reads
/// from the union's side: `separation_missing` lists union words absent
/// from the separating language, `separation_extra` the separating
/// language's words absent from the union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionReport {
    pub max_len: usize,
    pub union_words: Vec<String>,
    pub expected_words: Vec<String>,
    pub matches_expected: bool,
    pub separation_missing: Vec<String>,
    pub separation_missing_total: usize,
    pub separation_extra: Vec<String>,
    pub separation_extra_total: usize,
}

impl UnionReport {
    pub fn differs_from_separation(&self) -> bool {
        self.separation_missing_total + self.separation_extra_total > 0
    }

    /// The shortest (then lexicographically first) separating-language
    /// word the union lacks.
    pub fn first_separation_extra(&self) -> Option<&str> {
        self.separation_extra.first().map(|s| s.as_str())
    }
}

/// Runs the demonstration up to `max_len` (bounded by the enumeration
/// cap; the component systems here are thin enough that the brute-force
/// enumeration stays tiny at any permitted length).
pub fn union_demo(max_len: usize) -> Result<UnionReport> {
    let dirs = Alphabet::directions();
    let first = FSystem::new(
        compile_regex("(abc)*", None)?,
        compile_regex("(udd)*", Some(&dirs))?,
    )?;
    let second = FSystem::new(
        compile_regex("(edf)*", None)?,
        compile_regex("(uud)*", Some(&dirs))?,
    )?;

    let words_first = first.words_by_length_with_cap(max_len, DEFAULT_ENUM_CAP)?;
    let words_second = second.words_by_length_with_cap(max_len, DEFAULT_ENUM_CAP)?;
    let mut union_by_len: Vec<Vec<String>> = Vec::with_capacity(max_len + 1);
    for n in 0..=max_len {
        let mut merged: Vec<String> = words_first[n]
            .iter()
            .chain(words_second[n].iter())
            .cloned()
            .collect();
        merged.sort();
        merged.dedup();
        union_by_len.push(merged);
    }

    // Independent expectation: aⁿ(bc)ⁿ and (de)ⁿfⁿ, built by hand.
    let mut expected_by_len: Vec<Vec<String>> = vec![Vec::new(); max_len + 1];
    let mut n = 0;
    while 3 * n <= max_len {
        let mut abc = "a".repeat(n);
        abc.push_str(&"bc".repeat(n));
        let mut def = "de".repeat(n);
        def.push_str(&"f".repeat(n));
        expected_by_len[3 * n].push(abc);
        expected_by_len[3 * n].push(def);
        n += 1;
    }
    for bucket in &mut expected_by_len {
        bucket.sort();
        bucket.dedup();
    }

    let (expected_missing, em, expected_extra, ee) =
        diff_word_lists(max_len, &union_by_len, &expected_by_len);
    debug_assert!(expected_missing.len() <= em && expected_extra.len() <= ee);

    let separation = separation_language();
    let separation_by_len = separation.enumerate_by_length_with_cap(max_len, DEFAULT_ENUM_CAP)?;
    let (separation_missing, separation_missing_total, separation_extra, separation_extra_total) =
        diff_word_lists(max_len, &union_by_len, &separation_by_len);

    Ok(UnionReport {
        max_len,
        union_words: union_by_len.iter().flatten().cloned().collect(),
        expected_words: expected_by_len.iter().flatten().cloned().collect(),
        matches_expected: em == 0 && ee == 0,
        separation_missing,
        separation_missing_total,
        separation_extra,
        separation_extra_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_union() {
        let report = union_demo(7).unwrap();
        assert_eq!(
            report.union_words,
            vec![
                "".to_string(),
                "abc".to_string(),
                "def".to_string(),
                "aabcbc".to_string(),
                "dedeff".to_string(),
            ]
        );
        assert!(report.matches_expected);
    }

    #[test]
    fn diverges_from_the_separation_language() {
        let report = union_demo(7).unwrap();
        assert!(report.differs_from_separation());
        // The separating language's first word the union lacks.
        assert_eq!(report.first_separation_extra(), Some("a#bc"));
        // The union's ε (and every other markerless word) is missing from
        // the separating language.
        assert_eq!(report.separation_missing.first().map(|s| s.as_str()), Some(""));
    }
}
