//! Order-isomorphic subsequence containment, from scratch and incrementally.

use crate::error::{Error, Result};
use crate::pattern::{Pattern, PatternSet};
use crate::word::{Letter, Word};

/// Longest prefix an [`IncrementalChecker`] can hold.
pub const MAX_PREFIX: usize = 64;
/// Largest letter an [`IncrementalChecker`] accepts.
pub const MAX_CHECKER_LETTER: Letter = 127;

/// Constraint on one pattern index relative to indices matched earlier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bound {
    /// Same letter as the given index.
    Eq(usize),
    /// Strictly between the letters at the given indices (open ends when absent).
    Between(Option<usize>, Option<usize>),
}

/// Bound for index `i` of `p` relative to the indices in `others`.
fn bound_for(p: &[Letter], i: usize, others: impl Iterator<Item = usize>) -> Bound {
    let v = p[i];
    let mut lo: Option<usize> = None;
    let mut hi: Option<usize> = None;
    for j in others {
        let u = p[j];
        if u == v {
            return Bound::Eq(j);
        }
        if u < v && lo.map_or(true, |l| p[l] < u) {
            lo = Some(j);
        }
        if u > v && hi.map_or(true, |h| p[h] > u) {
            hi = Some(j);
        }
    }
    Bound::Between(lo, hi)
}

impl Bound {
    fn admits(self, vals: &[Letter], x: Letter) -> bool {
        match self {
            Bound::Eq(j) => vals[j] == x,
            Bound::Between(lo, hi) => lo.map_or(true, |l| vals[l] < x) && hi.map_or(true, |h| x < vals[h]),
        }
    }

    /// Lowest index this bound refers to.
    fn min_ref(self) -> Option<usize> {
        match self {
            Bound::Eq(j) => Some(j),
            Bound::Between(lo, hi) => match (lo, hi) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }
}

/// Matching plan for occurrences scanned right to left.
#[derive(Clone, Debug)]
struct Plan {
    len: usize,
    /// `full[i]`: bound of index `i` relative to `i+1..len`.
    full: Vec<Bound>,
    /// `head[i]`: bound of index `i < len-1` relative to `i+1..len-1`.
    head: Vec<Bound>,
    /// Bound of the last index relative to all others.
    last: Bound,
    /// Indices `>= stop` determine the admissible range of the last letter.
    stop: usize,
}

impl Plan {
    fn new(p: &Pattern) -> Plan {
        let l = p.letters();
        let len = l.len();
        let full = (0..len).map(|i| bound_for(l, i, i + 1..len)).collect();
        let head = (0..len.saturating_sub(1)).map(|i| bound_for(l, i, i + 1..len - 1)).collect();
        let last = bound_for(l, len - 1, 0..len - 1);
        let stop = last.min_ref().unwrap_or(len.saturating_sub(1));
        Plan { len, full, head, last, stop }
    }
}

/// True iff some subsequence of `w` is order-isomorphic to `p`.
pub fn contains(w: &Word, p: &Pattern) -> bool {
    contains_letters(w.letters(), p)
}

/// [`contains`] on a raw letter slice.
pub fn contains_letters(w: &[Letter], p: &Pattern) -> bool {
    let plan = Plan::new(p);
    let l = plan.len;
    if w.len() < l {
        return false;
    }
    let mut vals = vec![0 as Letter; l];
    fn rec(w: &[Letter], plan: &Plan, vals: &mut [Letter], i: usize, below: usize) -> bool {
        // Assign index i at some position < below.
        for q in (i..below).rev() {
            let x = w[q];
            if i + 1 < plan.len && !plan.full[i].admits(vals, x) {
                continue;
            }
            vals[i] = x;
            if i == 0 || rec(w, plan, vals, i - 1, q) {
                return true;
            }
        }
        false
    }
    rec(w, &plan, &mut vals, l - 1, w.len())
}

/// True iff `w` contains no pattern of `set`.
pub fn avoids(w: &Word, set: &PatternSet) -> bool {
    set.patterns().iter().all(|p| !contains(w, p))
}

/// Values `lo+1 ..= hi-1` as a bitmask (bit `v` for value `v`).
fn open_interval(lo: Letter, hi: Option<Letter>) -> u128 {
    let below = |n: u32| if n >= 128 { u128::MAX } else { (1u128 << n) - 1 };
    let upper = hi.map_or(u128::MAX, below);
    upper & !below(lo + 1)
}

/// Tracks a word prefix and the set of letters that would complete a forbidden pattern.
///
/// Each push scans only occurrences ending at the new position: it records, for every
/// pattern, the values the next letter must avoid. Whether a pushed letter creates an
/// occurrence is then a single bit test.
#[derive(Clone, Debug)]
pub struct IncrementalChecker {
    set: PatternSet,
    plans: Vec<Plan>,
    max_letter: Letter,
    letters: Vec<Letter>,
    /// `le[v]`: positions holding a letter `<= v`.
    le: Vec<u64>,
    /// `forbidden[d]`: letters that may not follow the prefix of length `d`.
    forbidden: Vec<u128>,
    violated: Vec<bool>,
    vals: Vec<Letter>,
    pos: Vec<usize>,
}

impl IncrementalChecker {
    /// A checker for prefixes over the alphabet `1..=max_letter`.
    pub fn new(set: &PatternSet, max_letter: Letter) -> Result<Self> {
        if max_letter == 0 || max_letter > MAX_CHECKER_LETTER {
            return Err(Error::LetterRange(max_letter as u64));
        }
        let plans: Vec<Plan> = set.patterns().iter().map(Plan::new).collect();
        let longest = plans.iter().map(|p| p.len).max().unwrap_or(0);
        let initial = if plans.iter().any(|p| p.len == 1) { u128::MAX } else { 0 };
        let mut forbidden = Vec::with_capacity(MAX_PREFIX + 1);
        forbidden.push(initial);
        let mut violated = Vec::with_capacity(MAX_PREFIX + 1);
        violated.push(false);
        Ok(IncrementalChecker {
            set: set.clone(),
            plans,
            max_letter,
            letters: Vec::with_capacity(MAX_PREFIX),
            le: vec![0; max_letter as usize + 1],
            forbidden,
            violated,
            vals: vec![0; longest],
            pos: vec![0; longest],
        })
    }

    pub fn pattern_set(&self) -> &PatternSet {
        &self.set
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True iff the current prefix contains some pattern of the set.
    pub fn is_violated(&self) -> bool {
        *self.violated.last().unwrap()
    }

    /// Bitmask (bit `v` for letter `v`) of letters whose push would create an occurrence.
    /// Meaningless once the prefix is violated.
    pub fn forbidden_next(&self) -> u128 {
        *self.forbidden.last().unwrap()
    }

    /// True iff appending `x` keeps the prefix pattern-free.
    pub fn allows(&self, x: Letter) -> bool {
        !self.is_violated() && x <= MAX_CHECKER_LETTER && self.forbidden_next() >> x & 1 == 0
    }

    pub fn push(&mut self, x: Letter) -> Result<()> {
        if x == 0 {
            return Err(Error::ZeroLetter);
        }
        if x > self.max_letter {
            return Err(Error::LetterRange(x as u64));
        }
        let p = self.letters.len();
        if p >= MAX_PREFIX {
            return Err(Error::TooLong { len: p + 1, max: MAX_PREFIX });
        }
        let was = self.is_violated();
        let now = was || self.forbidden_next() >> x & 1 == 1;
        self.letters.push(x);
        let bit = 1u64 << p;
        for m in &mut self.le[x as usize..] {
            *m |= bit;
        }
        let mut f = self.forbidden_next();
        if !now {
            for k in 0..self.plans.len() {
                f = self.extend_forbidden(k, p, x, f);
            }
        }
        self.forbidden.push(f);
        self.violated.push(now);
        Ok(())
    }

    pub fn pop(&mut self) -> Result<Letter> {
        let x = self.letters.pop().ok_or(Error::EmptyPop)?;
        let bit = !(1u64 << self.letters.len());
        for m in &mut self.le[x as usize..] {
            *m &= bit;
        }
        self.forbidden.pop();
        self.violated.pop();
        Ok(x)
    }

    /// Positions holding a letter allowed by `b` given the matched values.
    fn candidates(&self, b: Bound) -> u64 {
        match b {
            Bound::Eq(j) => {
                let v = self.vals[j] as usize;
                self.le[v] & !self.le[v - 1]
            }
            Bound::Between(lo, hi) => {
                let lo = lo.map_or(0, |l| self.vals[l] as usize);
                let hi = hi.map_or(self.max_letter as usize + 1, |h| self.vals[h] as usize);
                if hi <= lo + 1 {
                    0
                } else {
                    self.le[hi - 1] & !self.le[lo]
                }
            }
        }
    }

    fn last_interval(&self, b: Bound) -> u128 {
        match b {
            Bound::Eq(j) => 1u128 << self.vals[j],
            Bound::Between(lo, hi) => {
                open_interval(lo.map_or(0, |l| self.vals[l]), hi.map(|h| self.vals[h]))
            }
        }
    }

    /// Adds to `f` the next-letter values completing an occurrence of plan `k`
    /// whose second-to-last index sits at the new position `p`.
    fn extend_forbidden(&mut self, k: usize, p: usize, x: Letter, f: u128) -> u128 {
        let (len, stop, last) = {
            let plan = &self.plans[k];
            (plan.len, plan.stop, plan.last)
        };
        if len == 1 {
            return f;
        }
        self.vals[len - 2] = x;
        self.pos[len - 2] = p;
        self.scan(k, len - 2, stop, last, f)
    }

    /// Indices `i..` are matched; continue with index `i - 1`.
    fn scan(&mut self, k: usize, i: usize, stop: usize, last: Bound, mut f: u128) -> u128 {
        if i <= stop {
            let iv = self.last_interval(last);
            if iv & !f != 0 && self.exists(k, i) {
                f |= iv;
            }
            return f;
        }
        let b = self.plans[k].head[i - 1];
        let mut cand = self.candidates(b) & ((1u64 << self.pos[i]) - 1);
        while cand != 0 {
            let q = 63 - cand.leading_zeros() as usize;
            cand &= !(1u64 << q);
            self.vals[i - 1] = self.letters[q];
            self.pos[i - 1] = q;
            f = self.scan(k, i - 1, stop, last, f);
        }
        f
    }

    /// Can indices `0..i` be matched below position `pos[i]`?
    fn exists(&mut self, k: usize, i: usize) -> bool {
        if i == 0 {
            return true;
        }
        let b = self.plans[k].head[i - 1];
        let mut cand = self.candidates(b) & ((1u64 << self.pos[i]) - 1);
        if i == 1 {
            return cand != 0;
        }
        while cand != 0 {
            let q = 63 - cand.leading_zeros() as usize;
            cand &= !(1u64 << q);
            self.vals[i - 1] = self.letters[q];
            self.pos[i - 1] = q;
            if self.exists(k, i - 1) {
                return true;
            }
        }
        false
    }
}
