use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A nonempty reduced word: every value `1..=height` occurs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern(Word);

impl Pattern {
    pub fn new(word: Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Empty);
        }
        if !word.is_reduced() {
            return Err(Error::NotReduced(word.to_string()));
        }
        Ok(Pattern(word))
    }

    pub(crate) fn from_reduced_unchecked(word: Word) -> Self {
        debug_assert!(!word.is_empty() && word.is_reduced());
        Pattern(word)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn height(&self) -> Letter {
        self.0.height()
    }

    pub fn reverse(&self) -> Pattern {
        Pattern(self.0.reverse())
    }

    pub fn complement(&self) -> Pattern {
        Pattern(self.0.complement().expect("patterns are nonempty"))
    }

    /// `1^n`.
    pub fn constant(n: usize) -> Result<Pattern> {
        Pattern::new(Word::new(vec![1; n])?)
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(s.parse()?)
    }
}

/// A nonempty set of patterns in canonical order (length, then letters).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet(Vec<Pattern>);

impl PatternSet {
    pub fn new(mut patterns: Vec<Pattern>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::Empty);
        }
        patterns.sort();
        patterns.dedup();
        Ok(PatternSet(patterns))
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_len(&self) -> usize {
        self.0.iter().map(Pattern::len).min().unwrap_or(0)
    }

    pub fn reverse(&self) -> PatternSet {
        PatternSet::new(self.0.iter().map(Pattern::reverse).collect()).unwrap()
    }

    /// Complements every pattern at its own height.
    pub fn complement(&self) -> PatternSet {
        PatternSet::new(self.0.iter().map(Pattern::complement).collect()).unwrap()
    }

    /// Orbit under identity, reversal, complement and both, sorted.
    pub fn symmetries(&self) -> Vec<PatternSet> {
        let r = self.reverse();
        let c = self.complement();
        let rc = r.complement();
        let mut v = vec![self.clone(), r, c, rc];
        v.sort();
        v.dedup();
        v
    }

    /// Least element of `{P, reverse(P)}`.
    pub fn reversal_canonical(&self) -> PatternSet {
        let r = self.reverse();
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    /// Comma-separated form inside braces, e.g. `{121,1342}`.
    pub fn braced(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            p.fmt(f)?;
        }
        Ok(())
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Empty);
        }
        // `{121,1342}`: commas separate patterns, so letters are single digits
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            if inner.contains(';') {
                return Err(Error::Parse(s.to_string()));
            }
            return PatternSet::new(inner.split(',').map(str::parse).collect::<Result<Vec<_>>>()?);
        }
        PatternSet::new(s.split(';').map(str::parse).collect::<Result<Vec<_>>>()?)
    }
}

/// Shorthand for tests and tables: `set("121;1342")`.
pub fn set(s: &str) -> PatternSet {
    s.parse().unwrap_or_else(|e| panic!("bad pattern set `{s}`: {e}"))
}
