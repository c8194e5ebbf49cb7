//! Grouping pattern sets into bounded equivalence classes, plus a registry of known
//! equivalence statements and the composition conjecture check.

use std::fmt;

use rayon::prelude::*;

use crate::containment::contains_letters;
use crate::enumerate::{composition_series, count_multiset, fingerprint, Count, Fingerprint};
use crate::error::{Error, Result};
use crate::pattern::{Pattern, PatternSet};
use crate::shape::MultisetShape;
use crate::word::{Letter, Word};

/// What a class report was computed up to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Every reduced multiset of at most this size.
    MultisetSize(usize),
    /// Compositions of every `n` up to this value.
    CompositionN(usize),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::MultisetSize(b) => write!(f, "multisets of size <= {b}"),
            Bound::CompositionN(n) => write!(f, "compositions of n <= {n}"),
        }
    }
}

/// Evidence that two sets are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Shape { shape: MultisetShape, left: Count, right: Count },
    N { n: usize, left: Count, right: Count },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Shape { shape, left, right } => write!(f, "shape ({shape}): {left} vs {right}"),
            Witness::N { n, left, right } => write!(f, "n = {n}: {left} vs {right}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    /// Indices into `ClassReport::classes`.
    pub classes: (usize, usize),
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub bound: Bound,
    /// Classes ordered by first appearance of a member in the input.
    pub classes: Vec<Vec<PatternSet>>,
    /// One witness per pair of classes, comparing their first members.
    pub separations: Vec<Separation>,
}

impl ClassReport {
    pub fn non_singleton(&self) -> Vec<&Vec<PatternSet>> {
        self.classes.iter().filter(|c| c.len() > 1).collect()
    }

    pub fn class_of(&self, p: &PatternSet) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(p))
    }

    pub fn separation(&self, a: usize, b: usize) -> Option<&Witness> {
        let key = (a.min(b), a.max(b));
        self.separations.iter().find(|s| s.classes == key).map(|s| &s.witness)
    }
}

fn group<T: PartialEq + Sync, W: Send>(
    sets: &[PatternSet],
    data: &[T],
    bound: Bound,
    witness: impl Fn(&T, &T) -> Option<W> + Sync,
    into: impl Fn(W) -> Witness,
) -> ClassReport {
    let mut reps: Vec<usize> = Vec::new();
    let mut classes: Vec<Vec<PatternSet>> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        match reps.iter().position(|&r| data[r] == data[i]) {
            Some(c) => {
                if !classes[c].contains(s) {
                    classes[c].push(s.clone());
                }
            }
            None => {
                reps.push(i);
                classes.push(vec![s.clone()]);
            }
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..reps.len()).flat_map(|a| (a + 1..reps.len()).map(move |b| (a, b))).collect();
    let found: Vec<Option<W>> = pairs.par_iter().map(|&(a, b)| witness(&data[reps[a]], &data[reps[b]])).collect();
    let separations = pairs
        .into_iter()
        .zip(found)
        .filter_map(|(classes, w)| w.map(|w| Separation { classes, witness: into(w) }))
        .collect();
    ClassReport { bound, classes, separations }
}

/// Groups sets whose avoider counts agree on every reduced multiset of size `<= max_size`.
pub fn group_m_equiv(sets: &[PatternSet], max_size: usize) -> Result<ClassReport> {
    if max_size < 2 {
        return Err(Error::Invalid("max_size must be at least 2".into()));
    }
    let fps: Vec<Fingerprint> = sets.iter().map(|s| fingerprint(s, max_size)).collect::<Result<_>>()?;
    Ok(group(sets, &fps, Bound::MultisetSize(max_size), |a, b| a.first_difference(b), |(shape, left, right)| {
        Witness::Shape { shape, left, right }
    }))
}

fn series_difference(a: &[Count], b: &[Count]) -> Option<(usize, Count, Count)> {
    a.iter().zip(b).enumerate().find(|(_, (x, y))| x != y).map(|(i, (&x, &y))| (i + 1, x, y))
}

/// Series compared on their common prefix, so a longer series can refine a class.
struct Prefix<'a>(&'a [Count]);

impl PartialEq for Prefix<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a == b)
    }
}

/// Groups sets by precomputed composition counts (`series[i][n - 1]` is the count for `n`).
/// Series of different lengths are compared on their common prefix; the report's bound is
/// the shortest length.
pub fn group_series(sets: &[PatternSet], series: &[Vec<Count>]) -> Result<ClassReport> {
    if sets.len() != series.len() {
        return Err(Error::Invalid("one series per set is required".into()));
    }
    let n = series.iter().map(Vec::len).min().unwrap_or(0);
    let data: Vec<Prefix> = series.iter().map(|s| Prefix(s)).collect();
    Ok(group(sets, &data, Bound::CompositionN(n), |a, b| series_difference(a.0, b.0), |(n, left, right)| {
        Witness::N { n, left, right }
    }))
}

/// Groups sets whose composition counts agree for every `n <= n_max`.
pub fn group_wilf_compositions(sets: &[PatternSet], n_max: usize) -> Result<ClassReport> {
    let series: Vec<Vec<Count>> =
        sets.par_iter().map(|s| composition_series(n_max, s).map(|c| c.counts().to_vec())).collect::<Result<_>>()?;
    group_series(sets, &series)
}

/// Groups at `n_max`, then extends the series of every member of a non-singleton class to
/// `extended` and splits classes that separate there.
pub fn group_wilf_compositions_refined(sets: &[PatternSet], n_max: usize, extended: usize) -> Result<ClassReport> {
    let mut series: Vec<Vec<Count>> =
        sets.par_iter().map(|s| composition_series(n_max, s).map(|c| c.counts().to_vec())).collect::<Result<_>>()?;
    if extended > n_max {
        let coarse = group_series(sets, &series)?;
        for (i, s) in sets.iter().enumerate() {
            if coarse.classes.iter().any(|c| c.len() > 1 && c.contains(s)) {
                series[i] = composition_series(extended, s)?.counts().to_vec();
            }
        }
    }
    group_series(sets, &series)
}

/// Like [`group_wilf_compositions`], but the series of `sets[i]` is computed up to
/// `max(n_max, extents[i])`, so sets listed further can separate beyond `n_max`.
pub fn group_wilf_compositions_to(sets: &[PatternSet], n_max: usize, extents: &[usize]) -> Result<ClassReport> {
    if sets.len() != extents.len() {
        return Err(Error::Invalid("one extent per set is required".into()));
    }
    let series: Vec<Vec<Count>> = sets
        .par_iter()
        .zip(extents)
        .map(|(s, &e)| composition_series(n_max.max(e), s).map(|c| c.counts().to_vec()))
        .collect::<Result<_>>()?;
    group_series(sets, &series)
}

/// Merges classes that are complements of one another (after reversal canonicalisation).
pub fn fold_complements(classes: &[Vec<PatternSet>]) -> Vec<Vec<PatternSet>> {
    let key = |c: &Vec<PatternSet>| {
        let mut v: Vec<PatternSet> = c.iter().map(|s| s.reversal_canonical()).collect();
        v.sort();
        v
    };
    let keys: Vec<Vec<PatternSet>> = classes.iter().map(key).collect();
    let mut used = vec![false; classes.len()];
    let mut out = Vec::new();
    for i in 0..classes.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut merged = classes[i].clone();
        let comp: Vec<PatternSet> = {
            let mut v: Vec<PatternSet> = classes[i].iter().map(|s| s.complement().reversal_canonical()).collect();
            v.sort();
            v
        };
        if let Some(j) = (i + 1..classes.len()).find(|&j| !used[j] && keys[j] == comp) {
            used[j] = true;
            merged.extend(classes[j].iter().cloned());
        }
        out.push(merged);
    }
    out
}

/// Every reduced word of length `n`, in lexicographic order.
pub fn reduced_patterns(n: usize) -> Vec<Pattern> {
    fn rec(n: usize, cur: &mut Vec<Letter>, out: &mut Vec<Pattern>) {
        if cur.len() == n {
            let w = Word::new(cur.clone()).unwrap();
            if w.is_reduced() {
                out.push(Pattern::new(w).unwrap());
            }
            return;
        }
        for x in 1..=n as Letter {
            cur.push(x);
            rec(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Pairs of distinct reduced patterns of length 3, up to reversal.
pub fn family_3x3() -> Vec<PatternSet> {
    let p3 = reduced_patterns(3);
    let mut v: Vec<PatternSet> = p3
        .iter()
        .enumerate()
        .flat_map(|(i, a)| p3[i + 1..].iter().map(move |b| PatternSet::new(vec![a.clone(), b.clone()]).unwrap()))
        .map(|s| s.reversal_canonical())
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Pairs of a length-3 pattern and a length-4 pattern avoiding it, up to reversal.
pub fn family_3x4() -> Vec<PatternSet> {
    let p3 = reduced_patterns(3);
    let p4 = reduced_patterns(4);
    let mut v = Vec::new();
    for a in &p3 {
        for b in &p4 {
            if !contains_letters(b.letters(), a) {
                v.push(PatternSet::new(vec![a.clone(), b.clone()]).unwrap().reversal_canonical());
            }
        }
    }
    v.sort();
    v.dedup();
    v
}

/// Outcome of checking an equivalence statement within a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementReport {
    pub id: String,
    pub max_size: usize,
    pub r: Option<usize>,
    /// Groups of sets asserted to be equivalent.
    pub groups: Vec<Vec<PatternSet>>,
    pub holds: bool,
    /// First failing pair with the separating shape.
    pub witness: Option<(PatternSet, PatternSet, Witness)>,
}

/// Statement ids understood by [`verify_statement`].
pub const STATEMENTS: &[&str] = &[
    "single-pattern", "with-11", "with-constant", "pair-a", "pair-b", "pair-c", "pair-d", "pair-e", "pair-f", "pair-g", "pair-h",
    "family-1", "family-2", "family-3", "family-4", "family-5", "family-6", "family-7",
    "family-8", "family-9", "family-10", "family-11", "family-12", "family-13", "family-14",
];

/// Builds a pattern from `(letter, repeat)` runs; runs with repeat 0 vanish.
fn runs(parts: &[(Letter, usize)]) -> Pattern {
    let v: Vec<Letter> = parts.iter().flat_map(|&(x, e)| std::iter::repeat(x).take(e)).collect();
    Word::new(v).unwrap().reduce().unwrap()
}

fn pats(v: &[&str]) -> PatternSet {
    PatternSet::new(v.iter().map(|p| p.parse().unwrap()).collect()).unwrap()
}

fn pair(a: &str, b: Pattern) -> PatternSet {
    PatternSet::new(vec![a.parse().unwrap(), b]).unwrap()
}

/// Distinct arrangements of a multiset given by a word, sorted.
fn arrangements(mut w: Vec<Letter>) -> Vec<Pattern> {
    w.sort_unstable();
    let mut out = vec![];
    loop {
        out.push(Pattern::new(Word::new(w.clone()).unwrap()).unwrap());
        // next lexicographic permutation
        let Some(i) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else { break };
        let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
        w.swap(i, j);
        w[i + 1..].reverse();
    }
    out
}

fn statement_groups(id: &str, r: usize) -> Result<Vec<Vec<PatternSet>>> {
    let sets = |v: &[&[&str]]| vec![v.iter().map(|s| pats(s)).collect::<Vec<_>>()];
    let need = |min: usize| {
        if r < min {
            Err(Error::Invalid(format!("{id} requires r >= {min}")))
        } else {
            Ok(())
        }
    };
    let g = match id {
        "single-pattern" => (3..=5)
            .map(|k| {
                let mut w = vec![1];
                w.extend(std::iter::repeat(2).take(k - 2));
                w.push(3);
                arrangements(w).into_iter().map(|p| PatternSet::new(vec![p]).unwrap()).collect()
            })
            .collect(),
        "with-11" => vec![
            vec![pats(&["11", "123"]), pats(&["11", "132"]), pats(&["11", "321"])],
            vec![pats(&["11", "1342"]), pats(&["11", "2413"])],
            vec![pats(&["11", "1234"]), pats(&["11", "1243"]), pats(&["11", "2143"])],
        ],
        "with-constant" => (2..=3)
            .flat_map(|k| {
                let c = Pattern::constant(k).unwrap();
                let with = |p: &str| PatternSet::new(vec![c.clone(), p.parse().unwrap()]).unwrap();
                [vec![with("123"), with("321"), with("132")], vec![with("1223"), with("2213"), with("2132")]]
            })
            .collect(),
        "pair-a" => sets(&[&["122", "1111"], &["212", "1111"]]),
        "pair-b" => sets(&[
            &["111", "1223"],
            &["111", "1232"],
            &["111", "1322"],
            &["111", "2123"],
            &["111", "2132"],
            &["111", "2213"],
        ]),
        "pair-c" => sets(&[&["111", "1233"], &["111", "2133"]]),
        "pair-d" => sets(&[
            &["111", "1234"],
            &["111", "1243"],
            &["111", "1432"],
            &["111", "2134"],
            &["111", "2143"],
            &["111", "3214"],
        ]),
        "pair-e" => sets(&[&["123", "1111"], &["132", "1111"], &["213", "1111"]]),
        "pair-f" => sets(&[&["123", "1112"], &["213", "1112"]]),
        "pair-g" => sets(&[&["112", "1234"], &["112", "2134"], &["112", "3214"]]),
        "pair-h" => sets(&[&["112", "2314"], &["112", "3124"]]),
        "family-1" => {
            need(1)?;
            let mut gs = Vec::new();
            for k in 2..=3 {
                if r * k > 6 {
                    continue;
                }
                let base: Vec<Letter> = (1..=k as Letter).flat_map(|x| std::iter::repeat(x).take(r)).collect();
                let c = Pattern::constant(r + 1).unwrap();
                for tau in arrangements(base) {
                    let tc = tau.complement();
                    if tc >= tau {
                        gs.push(vec![
                            PatternSet::new(vec![c.clone(), tau.clone()]).unwrap(),
                            PatternSet::new(vec![c.clone(), tc]).unwrap(),
                        ]);
                    }
                }
            }
            gs
        }
        "family-2" => vec![vec![
            pair("112", runs(&[(1, 1), (2, 1), (1, r - 1)])),
            pair("121", runs(&[(1, r), (2, 1)])),
        ]],
        "family-3" => vec![vec![
            pair("112", runs(&[(1, 1), (2, 1), (3, 1), (1, r - 1)])),
            pair("121", runs(&[(1, r), (3, 1), (2, 1)])),
        ]],
        "family-4" => vec![vec![
            pair("112", runs(&[(1, 1), (2, 1), (3, 1), (2, r - 1)])),
            pair("112", runs(&[(2, 1), (1, 1), (3, 1), (2, r - 1)])),
            pair("121", runs(&[(1, 1), (3, 1), (2, r)])),
        ]],
        "family-5" => vec![vec![
            pair("112", runs(&[(1, 1), (2, 1), (3, r)])),
            pair("112", runs(&[(2, 1), (1, 1), (3, r)])),
        ]],
        "family-6" => vec![vec![
            pair("112", runs(&[(2, 1), (1, 1), (2, r)])),
            pair("121", runs(&[(1, 1), (2, r + 1)])),
        ]],
        "family-7" => {
            need(2)?;
            vec![vec![
                pair("112", runs(&[(2, r), (1, 1), (2, 1)])),
                pair("121", runs(&[(2, 1), (1, 1), (2, r)])),
            ]]
        }
        "family-8" => {
            need(2)?;
            vec![vec![
                pair("112", runs(&[(2, 1), (3, 1), (1, 1), (2, r - 1)])),
                pair("121", runs(&[(1, 1), (2, r), (3, 1)])),
                pair("121", runs(&[(2, r), (1, 1), (3, 1)])),
            ]]
        }
        "family-9" => vec![vec![
            pair("121", runs(&[(1, 1), (2, 1), (3, r)])),
            pair("121", runs(&[(2, 1), (1, 1), (3, r)])),
        ]],
        "family-10" => vec![vec![
            pair("123", runs(&[(1, r), (2, 1)])),
            pair("132", runs(&[(1, r - 1), (2, 1), (1, 1)])),
        ]],
        "family-11" => vec![vec![
            pair("123", runs(&[(1, r), (2, 1), (1, 1)])),
            pair("213", runs(&[(1, r), (2, 1), (1, 1)])),
        ]],
        "family-12" => vec![vec![
            pair("123", runs(&[(1, 1), (2, 1), (1, r)])),
            pair("213", runs(&[(1, 1), (2, 1), (1, r)])),
        ]],
        "family-13" => vec![vec![
            pair("123", runs(&[(1, 1), (3, 1), (2, r)])),
            pair("132", runs(&[(1, 1), (2, r), (3, 1)])),
        ]],
        "family-14" => vec![vec![
            pair("132", runs(&[(2, r), (1, 1), (3, 1)])),
            pair("213", runs(&[(1, 1), (3, 1), (2, r)])),
        ]],
        _ => return Err(Error::UnknownId(id.to_string())),
    };
    Ok(g)
}

/// Checks the equalities asserted by a statement on every reduced multiset of size
/// `<= max_size`. `r` parameterises the `family-*` statements (default 1 where allowed,
/// 2 for the families that need it).
pub fn verify_statement(id: &str, max_size: usize, r: Option<usize>) -> Result<StatementReport> {
    if max_size == 0 {
        return Err(Error::Invalid("max_size must be at least 1".into()));
    }
    let id = id.trim().to_ascii_lowercase();
    let parametric = id.starts_with("family-");
    let default_r = if id == "family-7" || id == "family-8" { 2 } else { 1 };
    let rr = r.unwrap_or(default_r);
    let groups = statement_groups(&id, rr)?;
    let shapes = MultisetShape::all_up_to(max_size);
    for g in &groups {
        let counts: Vec<Vec<Count>> = g
            .iter()
            .map(|s| shapes.par_iter().map(|sh| count_multiset(sh, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for i in 1..g.len() {
            if let Some(k) = (0..shapes.len()).find(|&k| counts[0][k] != counts[i][k]) {
                let w = Witness::Shape { shape: shapes[k].clone(), left: counts[0][k], right: counts[i][k] };
                return Ok(StatementReport {
                    id,
                    max_size,
                    r: parametric.then_some(rr),
                    groups: groups.clone(),
                    holds: false,
                    witness: Some((g[0].clone(), g[i].clone(), w)),
                });
            }
        }
    }
    Ok(StatementReport { id, max_size, r: parametric.then_some(rr), groups, holds: true, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjecturePair {
    pub left: PatternSet,
    pub right: PatternSet,
    pub left_series: Vec<Count>,
    pub right_series: Vec<Count>,
    /// Smallest `n` where the series differ.
    pub first_difference: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n_max: usize,
    pub pairs: Vec<ConjecturePair>,
    /// Multiset counts of the first pair on `(2,2,2,2,2)`.
    pub multiset_shape: MultisetShape,
    pub multiset_counts: (Count, Count),
}

impl ConjectureReport {
    pub fn all_equal(&self) -> bool {
        self.pairs.iter().all(|p| p.first_difference.is_none())
    }
}

/// Compares the composition series of `{121,1342}` with `{121,3142}` and of
/// `{212,3124}` with `{212,3142}` for every `n <= n_max`.
pub fn check_conjecture(n_max: usize) -> Result<ConjectureReport> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    let pairs = [("121;1342", "121;3142"), ("212;3124", "212;3142")]
        .iter()
        .map(|(a, b)| {
            let (l, r): (PatternSet, PatternSet) = (a.parse()?, b.parse()?);
            let ls = composition_series(n_max, &l)?.counts().to_vec();
            let rs = composition_series(n_max, &r)?.counts().to_vec();
            let first_difference = series_difference(&ls, &rs).map(|d| d.0);
            Ok(ConjecturePair { left: l, right: r, left_series: ls, right_series: rs, first_difference })
        })
        .collect::<Result<Vec<_>>>()?;
    let shape: MultisetShape = "2,2,2,2,2".parse()?;
    let multiset_counts = (count_multiset(&shape, &pairs[0].left)?, count_multiset(&shape, &pairs[0].right)?);
    Ok(ConjectureReport { n_max, pairs, multiset_shape: shape, multiset_counts })
}
