use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Letter = u32;

/// Largest letter accepted anywhere in the library.
pub const MAX_LETTER: Letter = i32::MAX as Letter;

/// A finite sequence of positive letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        for &x in &letters {
            if x == 0 {
                return Err(Error::ZeroLetter);
            }
            if x > MAX_LETTER {
                return Err(Error::LetterRange(x as u64));
            }
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&x| x >= 1));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Maximum letter, 0 for the empty word.
    pub fn height(&self) -> Letter {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        let k = self.height() as usize;
        if k > self.0.len() {
            return false;
        }
        let mut seen = vec![false; k + 1];
        for &x in &self.0 {
            seen[x as usize] = true;
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Number of occurrences of each value `1..=height`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0usize; self.height() as usize];
        for &x in &self.0 {
            m[x as usize - 1] += 1;
        }
        m
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Maps each letter `x` to `k + 1 - x` where `k` is the height.
    pub fn complement(&self) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let k = self.height();
        Ok(Word(self.0.iter().map(|&x| k + 1 - x).collect()))
    }

    /// Concatenation of `self` with `other` shifted up by the height of `self`.
    pub fn direct_sum(&self, other: &Word) -> Result<Word> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::Empty);
        }
        let h = self.height();
        let mut v = self.0.clone();
        for &x in &other.0 {
            let y = x.checked_add(h).filter(|&y| y <= MAX_LETTER).ok_or(Error::Overflow)?;
            v.push(y);
        }
        Ok(Word(v))
    }

    /// Relabels the letters onto `1..=k` preserving relative order.
    pub fn reduce(&self) -> Result<crate::Pattern> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let mut vals = self.0.clone();
        vals.sort_unstable();
        vals.dedup();
        let letters = self
            .0
            .iter()
            .map(|x| vals.binary_search(x).unwrap() as Letter + 1)
            .collect();
        Ok(crate::Pattern::from_reduced_unchecked(Word(letters)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x <= 9) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
        } else {
            for (i, x) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Parses `"1342"` (one digit per letter) or `"1,3,10,2"`.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Empty);
    }
    let bad = || Error::Parse(s.to_string());
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                let t = t.trim();
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let v: u64 = t.parse().map_err(|_| Error::LetterRange(u64::MAX))?;
                if v > MAX_LETTER as u64 {
                    return Err(Error::LetterRange(v));
                }
                Ok(v as Letter)
            })
            .collect()
    } else {
        s.bytes()
            .map(|b| if b.is_ascii_digit() { Ok((b - b'0') as Letter) } else { Err(bad()) })
            .collect()
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_letters(s)?)
    }
}

impl TryFrom<&[Letter]> for Word {
    type Error = Error;

    fn try_from(v: &[Letter]) -> Result<Self> {
        Word::new(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("31321").reduce().unwrap().to_string(), "31321");
        assert_eq!(w("5,2,5,3,2").reduce().unwrap().to_string(), "31321");
        assert_eq!(w("7").reduce().unwrap().to_string(), "1");
        assert_eq!(Word::default().reduce(), Err(Error::Empty));
    }

    #[test]
    fn symmetries() {
        assert_eq!(w("122534").reverse(), w("435221"));
        assert_eq!(w("31321").complement().unwrap(), w("13123"));
        assert_eq!(Word::default().reverse(), Word::default());
        assert!(Word::default().complement().is_err());
    }

    #[test]
    fn direct_sums() {
        assert_eq!(w("122").direct_sum(&w("312")).unwrap(), w("122534"));
        assert_eq!(w("1").direct_sum(&w("1")).unwrap(), w("12"));
        assert_eq!(w("21").direct_sum(&w("21")).unwrap(), w("2143"));
    }

    #[test]
    fn parsing() {
        assert_eq!(w("1,10,2").letters(), &[1, 10, 2]);
        assert_eq!(w("1,10,2").to_string(), "1,10,2");
        assert!("10".parse::<Word>().is_err());
        assert!("1,,2".parse::<Word>().is_err());
        assert!("1a".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
        assert!("1,99999999999".parse::<Word>().is_err());
        assert_eq!(w("99").letters(), &[9, 9]);
    }
}
