//! Brute-force oracles and property checks shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mpav::{Letter, MultisetShape, Pattern, PatternSet, Word};
use proptest::prelude::*;

/// Every choice of `p.len()` positions, compared by relative order including ties.
pub fn naive_contains(w: &[Letter], p: &[Letter]) -> bool {
    let k = p.len();
    if k > w.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Letter> = idx.iter().map(|&i| w[i]).collect();
        let iso = (0..k).all(|a| (0..k).all(|b| sub[a].cmp(&sub[b]) == p[a].cmp(&p[b])));
        if iso {
            return true;
        }
        // next combination
        let Some(i) = (0..k).rev().find(|&i| idx[i] < w.len() - k + i) else { return false };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn naive_avoids(w: &[Letter], set: &PatternSet) -> bool {
    set.patterns().iter().all(|p| !naive_contains(w, p.letters()))
}

/// Distinct arrangements of a multiset, by repeated next-permutation.
pub fn arrangements(mut w: Vec<Letter>) -> Vec<Vec<Letter>> {
    w.sort_unstable();
    let mut out = vec![];
    loop {
        out.push(w.clone());
        let Some(i) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else { break };
        let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
        w.swap(i, j);
        w[i + 1..].reverse();
    }
    out
}

pub fn naive_count_multiset(exponents: &[usize], set: &PatternSet) -> u64 {
    let w: Vec<Letter> = exponents.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i as Letter + 1).take(e)).collect();
    arrangements(w).iter().filter(|a| naive_avoids(a, set)).count() as u64
}

/// All compositions of `n`.
pub fn compositions(n: usize) -> Vec<Vec<Letter>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first as Letter);
            out.push(rest);
        }
    }
    out
}

pub fn naive_count_compositions(n: usize, set: &PatternSet) -> u64 {
    compositions(n).iter().filter(|c| naive_avoids(c, set)).count() as u64
}

/// Partitions of `n` into parts `<= max`, parts in nonincreasing order.
pub fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Shape of the multiset of parts: multiplicities of the distinct parts in increasing order.
pub fn partition_shape(parts: &[usize]) -> MultisetShape {
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        *m.entry(p).or_default() += 1;
    }
    MultisetShape::new(m.into_values().collect()).unwrap()
}

pub fn reduced(v: Vec<Letter>) -> Pattern {
    Word::new(v).unwrap().reduce().unwrap()
}

pub fn word_strategy(max_len: usize, max_letter: Letter) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(1..=max_letter, 1..=max_len)
}

pub fn pattern_strategy(max_len: usize) -> impl Strategy<Value = Pattern> {
    prop::collection::vec(1..=max_len as Letter, 1..=max_len).prop_map(reduced)
}

/// Sets of one or two patterns of length 2 to 4.
pub fn set_strategy() -> impl Strategy<Value = PatternSet> {
    prop::collection::vec(prop::collection::vec(1..=4 as Letter, 2..=4).prop_map(reduced), 1..=2)
        .prop_map(|ps| PatternSet::new(ps).unwrap())
}

pub fn shape_strategy(max_height: usize, max_exp: usize) -> impl Strategy<Value = MultisetShape> {
    prop::collection::vec(1..=max_exp, 1..=max_height).prop_map(|v| MultisetShape::new(v).unwrap())
}

/// Operations on an incremental checker: `Some(x)` pushes, `None` pops.
pub fn ops_strategy(max_letter: Letter) -> impl Strategy<Value = Vec<Option<Letter>>> {
    prop::collection::vec(prop::option::weighted(0.75, 1..=max_letter), 0..40)
}

pub fn check_containment(w: &[Letter], p: &Pattern) -> Result<(), TestCaseError> {
    let word = Word::new(w.to_vec()).unwrap();
    prop_assert_eq!(mpav::contains(&word, p), naive_contains(w, p.letters()), "word {:?} pattern {}", w, p);
    Ok(())
}

pub fn check_symmetries(set: &PatternSet, shape: &MultisetShape) -> Result<(), TestCaseError> {
    let c = mpav::count_multiset(shape, set).unwrap();
    prop_assert_eq!(c, mpav::count_multiset(shape, &set.reverse()).unwrap());
    prop_assert_eq!(c, mpav::count_multiset(&shape.reversed(), &set.complement()).unwrap());
    if shape.size() <= 7 {
        prop_assert_eq!(c, naive_count_multiset(shape.exponents(), set));
    }
    Ok(())
}

pub fn check_composition_reversal(set: &PatternSet, n: usize) -> Result<(), TestCaseError> {
    let c = mpav::count_compositions(n, set).unwrap();
    prop_assert_eq!(c, mpav::count_compositions(n, &set.reverse()).unwrap());
    if n <= 10 {
        prop_assert_eq!(c, naive_count_compositions(n, set));
    }
    Ok(())
}

/// Compositions of `n` split by their multiset of parts.
pub fn check_decomposition(set: &PatternSet, n_max: usize) -> Result<(), TestCaseError> {
    let series = mpav::composition_series(n_max, set).unwrap();
    for n in 1..=n_max {
        let mut total = 0u64;
        for parts in partitions(n, n) {
            total += mpav::count_multiset(&partition_shape(&parts), set).unwrap();
        }
        prop_assert_eq!(series.get(n), Some(total), "n = {}", n);
    }
    Ok(())
}

pub fn check_incremental(set: &PatternSet, ops: &[Option<Letter>], max_letter: Letter) -> Result<(), TestCaseError> {
    let mut ck = mpav::IncrementalChecker::new(set, max_letter).unwrap();
    let mut model: Vec<Letter> = vec![];
    for op in ops {
        match op {
            Some(x) => {
                ck.push(*x).unwrap();
                model.push(*x);
            }
            None => {
                if model.is_empty() {
                    prop_assert!(ck.pop().is_err());
                    continue;
                }
                prop_assert_eq!(ck.pop().unwrap(), model.pop().unwrap());
            }
        }
        prop_assert_eq!(ck.prefix(), &model[..]);
        let violated = !naive_avoids(&model, set);
        prop_assert_eq!(ck.is_violated(), violated, "prefix {:?}", model);
        if !violated {
            for x in 1..=max_letter {
                let mut next = model.clone();
                next.push(x);
                prop_assert_eq!(ck.allows(x), naive_avoids(&next, set), "prefix {:?} then {}", model, x);
            }
        }
    }
    Ok(())
}
