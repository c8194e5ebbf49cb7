use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Exponents `(a1, ..., ak)` of the reduced multiset `1^a1 2^a2 ... k^ak`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetShape(Vec<usize>);

impl MultisetShape {
    pub fn new(exponents: Vec<usize>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Empty);
        }
        if exponents.iter().any(|&a| a == 0) {
            return Err(Error::NotReduced(format!("{exponents:?}")));
        }
        Ok(MultisetShape(exponents))
    }

    pub fn exponents(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn reversed(&self) -> MultisetShape {
        MultisetShape(self.0.iter().rev().copied().collect())
    }

    /// The weakly increasing word `1^a1 ... k^ak`.
    pub fn sorted_word(&self) -> Word {
        let mut v = Vec::with_capacity(self.size());
        for (i, &a) in self.0.iter().enumerate() {
            v.extend(std::iter::repeat(i as Letter + 1).take(a));
        }
        Word::from_vec_unchecked(v)
    }

    /// Shape of a word whose letters are exactly `1..=k`.
    pub fn of_word(w: &Word) -> Result<MultisetShape> {
        if !w.is_reduced() || w.is_empty() {
            return Err(Error::NotReduced(w.to_string()));
        }
        MultisetShape::new(w.multiplicities())
    }

    /// Number of arrangements, `n! / prod(ai!)`.
    pub fn arrangements(&self) -> Result<u64> {
        let mut total: u64 = 1;
        let mut placed: u64 = 0;
        for &a in &self.0 {
            for j in 1..=a as u64 {
                placed += 1;
                // total * placed / j stays integral: it is a running binomial product.
                let t = (total as u128) * (placed as u128) / (j as u128);
                total = u64::try_from(t).map_err(|_| Error::Overflow)?;
            }
        }
        Ok(total)
    }

    /// All reduced shapes of the given size, in lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<MultisetShape> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultisetShape>) {
            if left == 0 {
                out.push(MultisetShape(cur.clone()));
                return;
            }
            for a in 1..=left {
                cur.push(a);
                rec(left - a, cur, out);
                cur.pop();
            }
        }
        if n > 0 {
            rec(n, &mut cur, &mut out);
        }
        out
    }

    /// All reduced shapes of size `1..=max_size`, by size then lexicographically.
    pub fn all_up_to(max_size: usize) -> Vec<MultisetShape> {
        (1..=max_size).flat_map(Self::all_of_size).collect()
    }
}

impl fmt::Display for MultisetShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for MultisetShape {
    type Err = Error;

    /// Comma-separated exponents, e.g. `2,2,2,2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Empty);
        }
        let v = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(s.to_string()));
                }
                t.parse::<usize>().map_err(|_| Error::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        MultisetShape::new(v)
    }
}
