//! Exact counting of avoiders by pruned depth-first generation.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::containment::{IncrementalChecker, MAX_PREFIX};
use crate::error::{Error, Result};
use crate::pattern::PatternSet;
use crate::shape::MultisetShape;
use crate::word::{Letter, Word};

pub type Count = u64;

/// Largest `n` accepted by the composition counters.
pub const MAX_COMPOSITION_N: usize = MAX_PREFIX;

pub(crate) fn add(a: Count, b: Count) -> Result<Count> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn check_size(shape: &MultisetShape) -> Result<()> {
    if shape.size() > MAX_PREFIX {
        return Err(Error::TooLong { len: shape.size(), max: MAX_PREFIX });
    }
    Ok(())
}

struct MultisetSearch {
    checker: IncrementalChecker,
    rem: Vec<usize>,
    left: usize,
}

impl MultisetSearch {
    fn new(shape: &MultisetShape, set: &PatternSet) -> Result<Self> {
        check_size(shape)?;
        let k = shape.height();
        let mut rem = vec![0];
        rem.extend_from_slice(shape.exponents());
        Ok(MultisetSearch {
            checker: IncrementalChecker::new(set, k as Letter)?,
            rem,
            left: shape.size(),
        })
    }

    fn push(&mut self, x: usize) {
        self.checker.push(x as Letter).expect("letter within alphabet");
        self.rem[x] -= 1;
        self.left -= 1;
    }

    fn pop(&mut self) {
        let x = self.checker.pop().expect("nonempty prefix") as usize;
        self.rem[x] += 1;
        self.left += 1;
    }

    fn count(&mut self) -> Count {
        let allowed = !self.checker.forbidden_next();
        if self.left == 1 {
            let x = self.rem.iter().position(|&r| r > 0).unwrap();
            return (allowed >> x & 1) as Count;
        }
        let mut total = 0;
        for x in 1..self.rem.len() {
            if self.rem[x] == 0 || allowed >> x & 1 == 0 {
                continue;
            }
            self.push(x);
            total += self.count();
            self.pop();
        }
        total
    }
}

/// Number of arrangements of `shape` avoiding every pattern of `set`.
pub fn count_multiset(shape: &MultisetShape, set: &PatternSet) -> Result<Count> {
    let search = MultisetSearch::new(shape, set)?;
    if search.checker.is_violated() || shape.height() == 1 {
        let mut s = search;
        return Ok(if s.checker.is_violated() { 0 } else { s.count() });
    }
    let firsts: Vec<usize> = (1..=shape.height()).collect();
    let parts = firsts
        .par_iter()
        .map(|&x| {
            let mut s = MultisetSearch::new(shape, set).expect("validated above");
            if s.checker.forbidden_next() >> x & 1 == 1 {
                return 0;
            }
            s.push(x);
            if s.left == 0 {
                1
            } else {
                s.count()
            }
        })
        .collect::<Vec<Count>>();
    parts.into_iter().try_fold(0, add)
}

/// Iterator over the avoiders of a multiset in lexicographic order.
pub struct MultisetAvoiders {
    search: MultisetSearch,
    next_try: Vec<usize>,
    done: bool,
}

/// Lists the arrangements of `shape` avoiding `set`, in lexicographic order.
pub fn enumerate_multiset(shape: &MultisetShape, set: &PatternSet) -> Result<MultisetAvoiders> {
    let search = MultisetSearch::new(shape, set)?;
    let done = search.checker.is_violated();
    Ok(MultisetAvoiders { next_try: vec![1; shape.size() + 1], search, done })
}

impl Iterator for MultisetAvoiders {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        loop {
            let s = &mut self.search;
            let d = s.checker.len();
            let allowed = !s.checker.forbidden_next();
            let found = (self.next_try[d]..s.rem.len()).find(|&x| s.rem[x] > 0 && allowed >> x & 1 == 1);
            match found {
                Some(x) => {
                    self.next_try[d] = x + 1;
                    s.push(x);
                    self.next_try[d + 1] = 1;
                    if s.left == 0 {
                        let w = Word::new(s.checker.prefix().to_vec()).unwrap();
                        s.pop();
                        return Some(w);
                    }
                }
                None => {
                    if d == 0 {
                        self.done = true;
                        return None;
                    }
                    s.pop();
                }
            }
        }
    }
}

/// Exact counts `c_1..=c_{n_max}` of pattern-avoiding compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    set: PatternSet,
    counts: Vec<Count>,
}

impl CompositionSeries {
    pub fn pattern_set(&self) -> &PatternSet {
        &self.set
    }

    pub fn n_max(&self) -> usize {
        self.counts.len()
    }

    /// `c_n` for `1 <= n <= n_max`.
    pub fn get(&self, n: usize) -> Option<Count> {
        n.checked_sub(1).and_then(|i| self.counts.get(i).copied())
    }

    pub fn counts(&self) -> &[Count] {
        &self.counts
    }
}

fn composition_dfs(ch: &mut IncrementalChecker, remaining: usize, sum: usize, counts: &mut [Count]) {
    let mut allowed = !ch.forbidden_next() & ((1u128 << (remaining + 1)) - 2);
    while allowed != 0 {
        let x = allowed.trailing_zeros() as usize;
        allowed &= allowed - 1;
        counts[sum + x] += 1;
        if x < remaining {
            ch.push(x as Letter).expect("part within alphabet");
            composition_dfs(ch, remaining - x, sum + x, counts);
            ch.pop().expect("nonempty prefix");
        }
    }
}

/// Counts compositions of every `n <= n_max` avoiding `set` in a single search:
/// every node of the generation tree is itself a composition.
pub fn composition_series(n_max: usize, set: &PatternSet) -> Result<CompositionSeries> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    if n_max > MAX_COMPOSITION_N {
        return Err(Error::TooLong { len: n_max, max: MAX_COMPOSITION_N });
    }
    let root = IncrementalChecker::new(set, n_max as Letter)?;
    let forbidden = root.forbidden_next();
    let parts: Vec<Vec<Count>> = (1..=n_max)
        .into_par_iter()
        .map(|x| {
            let mut counts = vec![0; n_max + 1];
            if forbidden >> x & 1 == 1 {
                return counts;
            }
            counts[x] = 1;
            if x < n_max {
                let mut ch = root.clone();
                ch.push(x as Letter).expect("part within alphabet");
                composition_dfs(&mut ch, n_max - x, x, &mut counts);
            }
            counts
        })
        .collect();
    let mut counts = vec![0; n_max + 1];
    for part in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c = add(*c, p)?;
        }
    }
    counts.remove(0);
    Ok(CompositionSeries { set: set.clone(), counts })
}

/// Number of compositions of `n` avoiding `set`.
pub fn count_compositions(n: usize, set: &PatternSet) -> Result<Count> {
    Ok(composition_series(n, set)?.get(n).unwrap())
}

/// Avoider counts for every reduced shape up to a size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    max_size: usize,
    counts: BTreeMap<MultisetShape, Count>,
}

impl Fingerprint {
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn get(&self, shape: &MultisetShape) -> Option<Count> {
        self.counts.get(shape).copied()
    }

    pub fn counts(&self) -> &BTreeMap<MultisetShape, Count> {
        &self.counts
    }

    /// First shape (by size, then lexicographically) where the two disagree.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<(MultisetShape, Count, Count)> {
        MultisetShape::all_up_to(self.max_size.min(other.max_size)).into_iter().find_map(|s| {
            let (a, b) = (self.get(&s)?, other.get(&s)?);
            (a != b).then_some((s, a, b))
        })
    }
}

/// `count_multiset` for every reduced shape of size `<= max_size`.
pub fn fingerprint(set: &PatternSet, max_size: usize) -> Result<Fingerprint> {
    if max_size == 0 {
        return Err(Error::Invalid("max_size must be at least 1".into()));
    }
    let shapes = MultisetShape::all_up_to(max_size);
    let counts = shapes
        .into_par_iter()
        .map(|s| count_multiset(&s, set).map(|c| (s, c)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Fingerprint { max_size, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::set;

    fn shape(s: &str) -> MultisetShape {
        s.parse().unwrap()
    }

    #[test]
    fn small_multisets() {
        assert_eq!(count_multiset(&shape("2,2"), &set("112;2212")).unwrap(), 3);
        assert_eq!(count_multiset(&shape("7"), &set("112;2212")).unwrap(), 1);
        assert_eq!(count_multiset(&shape("3"), &set("111")).unwrap(), 0);
        let words: Vec<String> =
            enumerate_multiset(&shape("2,2"), &set("112;2212")).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(words, ["1221", "2121", "2211"]);
        let words: Vec<String> =
            enumerate_multiset(&shape("1,1"), &set("11")).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(words, ["12", "21"]);
        assert_eq!(enumerate_multiset(&shape("3"), &set("111")).unwrap().count(), 0);
    }

    #[test]
    fn small_compositions() {
        assert_eq!(count_compositions(5, &set("1")).unwrap(), 0);
        assert_eq!(count_compositions(1, &set("12")).unwrap(), 1);
        let s = composition_series(5, &set("123456")).unwrap();
        assert_eq!(s.counts(), &[1, 2, 4, 8, 16]);
        assert!(composition_series(0, &set("12")).is_err());
        assert!(composition_series(65, &set("12")).is_err());
    }

    #[test]
    fn fingerprint_single_letter_shapes() {
        let f = fingerprint(&set("121;1342"), 6).unwrap();
        assert_eq!(f.get(&shape("6")), Some(1));
        assert_eq!(f.counts().len(), 63);
    }
}
