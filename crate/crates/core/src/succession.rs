//! Generating trees driven by exponent-parametrized succession rules.
//!
//! A rule builds avoiders of `1^a1 ... k^ak` one letter value at a time, inserting
//! all copies of that value at once. Largest-first rules insert `k` first and end
//! with `1`; smallest-first rules insert `1` first. Each partial avoider carries a
//! label, and the rule gives the exact multiset of child labels for every label
//! and exponent.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::containment::contains_letters;
use rayon::prelude::*;

use crate::enumerate::{add, count_multiset, Count};
use crate::error::{Error, Result};
use crate::pattern::{set, PatternSet};
use crate::shape::MultisetShape;
use crate::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    R112_2212,
    R112_2122,
    R112_2121,
    R112_2312,
    R121_1322,
    R123_1121,
    R123_1112,
    R123_1211,
    R121_1243A,
    R121_1243B,
    R121_1243C,
    R132_2213,
}

impl RuleId {
    pub const ALL: [RuleId; 12] = [
        RuleId::R112_2212,
        RuleId::R112_2122,
        RuleId::R112_2121,
        RuleId::R112_2312,
        RuleId::R121_1322,
        RuleId::R123_1121,
        RuleId::R123_1112,
        RuleId::R123_1211,
        RuleId::R121_1243A,
        RuleId::R121_1243B,
        RuleId::R121_1243C,
        RuleId::R132_2213,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::R112_2212 => "R_112_2212",
            RuleId::R112_2122 => "R_112_2122",
            RuleId::R112_2121 => "R_112_2121",
            RuleId::R112_2312 => "R_112_2312",
            RuleId::R121_1322 => "R_121_1322",
            RuleId::R123_1121 => "R_123_1121",
            RuleId::R123_1112 => "R_123_1112",
            RuleId::R123_1211 => "R_123_1211",
            RuleId::R121_1243A => "R_121_1243_a",
            RuleId::R121_1243B => "R_121_1243_b",
            RuleId::R121_1243C => "R_121_1243_c",
            RuleId::R132_2213 => "R_132_2213",
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            RuleId::R121_1243C | RuleId::R132_2213 => Orientation::SmallestFirst,
            _ => Orientation::LargestFirst,
        }
    }

    pub fn is_pair_labelled(self) -> bool {
        matches!(self, RuleId::R121_1243A | RuleId::R121_1243B | RuleId::R121_1243C)
    }

    pub fn root(self) -> RuleLabel {
        if self.is_pair_labelled() {
            RuleLabel::Pair(0, 1)
        } else {
            RuleLabel::Sites(1)
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// Order in which letter values are inserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    LargestFirst,
    SmallestFirst,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::LargestFirst => Orientation::SmallestFirst,
            Orientation::SmallestFirst => Orientation::LargestFirst,
        }
    }

    /// Exponents of `shape` in consumption order.
    pub fn exponents(self, shape: &MultisetShape) -> Vec<usize> {
        match self {
            Orientation::SmallestFirst => shape.exponents().to_vec(),
            Orientation::LargestFirst => shape.exponents().iter().rev().copied().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleLabel {
    /// Number of active sites.
    Sites(u64),
    /// Primary and secondary active sites.
    Pair(u64, u64),
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleLabel::Sites(l) => write!(f, "{l}"),
            RuleLabel::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Where in the construction a transition happens.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Context {
    /// Zero-based index of the exponent being inserted.
    pub step: usize,
    /// Letters placed before this step.
    pub placed: u64,
}

pub type LabelDistribution = BTreeMap<RuleLabel, Count>;

/// A pattern set counted by a rule when exponents are consumed in `orientation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub set: PatternSet,
    pub orientation: Orientation,
}

/// Pattern sets whose avoiders the rule counts in its own orientation.
pub fn rule_pattern_sets(rule: RuleId) -> Vec<PatternSet> {
    let names: &[&str] = match rule {
        RuleId::R112_2212 => &["112;2212", "121;2122"],
        RuleId::R112_2122 => &["112;2122", "121;1222"],
        RuleId::R112_2121 => &["112;2121", "121;1122"],
        RuleId::R112_2312 => &["112;2312", "121;1223", "121;2213"],
        RuleId::R121_1322 => &["121;1322", "112;1232", "112;2132"],
        RuleId::R123_1121 => &["123;1121", "132;1211", "213;1121"],
        RuleId::R123_1112 => &["123;1112", "132;1121"],
        RuleId::R123_1211 => &["123;1211", "213;1211"],
        RuleId::R121_1243A => &["121;1243", "121;2143"],
        RuleId::R121_1243B => &["112;1243", "112;2143"],
        RuleId::R121_1243C => &["212;1234", "212;1243"],
        RuleId::R132_2213 => &["132;2213", "213;1322"],
    };
    names.iter().map(|s| set(s)).collect()
}

/// All sets the rule counts, with the orientation to use. Reverse-complemented sets are
/// counted with the flipped orientation since `av(S, P) = av(reverse S, complement P)`.
pub fn rule_coverage(rule: RuleId) -> Vec<Coverage> {
    let own = rule_pattern_sets(rule);
    let mut out: Vec<Coverage> =
        own.iter().map(|s| Coverage { set: s.clone(), orientation: rule.orientation() }).collect();
    if rule == RuleId::R121_1243C {
        for s in &own {
            out.push(Coverage { set: s.reverse().complement(), orientation: rule.orientation().flipped() });
        }
    }
    out
}

fn domain(rule: RuleId, label: RuleLabel) -> Error {
    Error::LabelDomain(format!("{label} for {rule}"))
}

/// Child labels and multiplicities of a node labelled `label` when `exponent` copies
/// of the next letter are inserted.
pub fn offspring_distribution(
    rule: RuleId,
    label: RuleLabel,
    exponent: usize,
    ctx: Context,
) -> Result<LabelDistribution> {
    if exponent == 0 {
        return Err(Error::Invalid("exponent must be positive".into()));
    }
    let a = exponent as u64;
    let mut out = LabelDistribution::new();
    let mut put = |lab: RuleLabel, mult: u64| -> Result<()> {
        if mult > 0 {
            let e = out.entry(lab).or_insert(0);
            *e = add(*e, mult)?;
        }
        Ok(())
    };
    match (rule.is_pair_labelled(), label) {
        (false, RuleLabel::Sites(l)) if l >= 1 => {
            let s = RuleLabel::Sites;
            match rule {
                RuleId::R112_2212 => put(s(if a == 1 { l + 1 } else { l + 2 }), l)?,
                RuleId::R112_2122 => match a {
                    1 => put(s(l + 1), l)?,
                    2 => put(s(l + 2), l)?,
                    _ => {
                        for j in 3..=l + 2 {
                            put(s(j), 1)?;
                        }
                    }
                },
                RuleId::R112_2121 => {
                    if a == 1 {
                        let rest = (ctx.placed + 1).checked_sub(l).ok_or_else(|| domain(rule, label))?;
                        put(s(l + 1), l)?;
                        put(s(l), rest)?;
                    } else {
                        for j in 2..=l + 1 {
                            put(s(j), 1)?;
                        }
                    }
                }
                RuleId::R112_2312 => {
                    if a == 1 {
                        put(s(l + 1), l)?;
                    } else {
                        for j in 3..=l + 1 {
                            put(s(j), 1)?;
                        }
                        put(s(l + a), 1)?;
                    }
                }
                RuleId::R121_1322 => {
                    if a == 1 {
                        put(s(l + 1), l)?;
                    } else {
                        for j in a + 1..=a + l {
                            put(s(j), 1)?;
                        }
                    }
                }
                RuleId::R123_1121 => {
                    if a == 1 {
                        for j in 2..=l + 1 {
                            put(s(j), 1)?;
                        }
                    } else {
                        for j in 2..=l {
                            put(s(j), l + 1 - j)?;
                        }
                        for j in a + 1..=a + l {
                            put(s(j), 1)?;
                        }
                    }
                }
                RuleId::R123_1112 => {
                    if a == 1 {
                        for j in 2..=l + 1 {
                            put(s(j), 1)?;
                        }
                    } else {
                        put(s(a), l - 1)?;
                        for j in 1..l {
                            put(s(a + j), l - j)?;
                        }
                        put(s(a + l), 1)?;
                    }
                }
                RuleId::R123_1211 => {
                    if a == 1 {
                        for j in 2..=l + 1 {
                            put(s(j), 1)?;
                        }
                    } else {
                        put(s(2), l - 1)?;
                        put(s(a + l), 1)?;
                        for j in 3..=l + 1 {
                            put(s(j), l + 2 - j)?;
                        }
                    }
                }
                RuleId::R132_2213 => {
                    if a == 1 {
                        for j in 2..=l + 1 {
                            put(s(j), 1)?;
                        }
                    } else if l == 1 {
                        put(s(a + 1), 1)?;
                    } else {
                        let one = (l as i128 - 1) * binom(a + l - 3, a - 1)
                            - (a as i128 - 1) * binom(a + l - 3, a)
                            - binom(l, 2);
                        let one = u64::try_from(one).map_err(|_| domain(rule, label))?;
                        put(s(1), one)?;
                        put(s(2), u64::try_from(binom(a + l - 3, a - 1) + binom(l - 1, 2)).unwrap())?;
                        put(s(3), u64::try_from(binom(a + l - 4, a - 2) + l as i128 - 1).unwrap())?;
                        for j in 4..=a + 1 {
                            put(s(j), u64::try_from(binom(a + l - j - 1, a + 1 - j)).unwrap())?;
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        (true, RuleLabel::Pair(pa, pb)) if pa + pb >= 1 => {
            let p = RuleLabel::Pair;
            match rule {
                RuleId::R121_1243A => {
                    if pa > 0 {
                        for j in 1..=pa {
                            put(p(j, pb), 1)?;
                        }
                    }
                    for j in 1..=pb {
                        put(p(pa + j - 1, a + pb - j + 1), 1)?;
                    }
                }
                RuleId::R121_1243B => match (pa > 0, a > 1) {
                    (true, true) => {
                        for j in pb..pa + pb {
                            put(p(j, a), 1)?;
                        }
                        put(p(pa + pb, a), pb.saturating_sub(1))?;
                        put(p(pa + pb - 1, a + 1), 1)?;
                    }
                    (true, false) => {
                        for j in 1..=pa {
                            put(p(j, pb), 1)?;
                        }
                        put(p(pa, pb + 1), 1)?;
                        for j in 1..pb {
                            put(p(pa + j, pb + 1 - j), 1)?;
                        }
                    }
                    (false, true) => {
                        put(p(pb - 1, a + 1), 1)?;
                        put(p(pb, a), pb - 1)?;
                    }
                    (false, false) => {
                        put(p(0, pb + 1), 1)?;
                        for j in 1..pb {
                            put(p(j, pb + 1 - j), 1)?;
                        }
                    }
                },
                RuleId::R121_1243C => {
                    if pa > 0 {
                        for j in 1..=pa {
                            put(p(j, pb), 1)?;
                        }
                        for j in 2..=pb {
                            put(p(pa + pb + a - j, j), 1)?;
                        }
                        put(p(pa, pb + a), 1)?;
                    } else {
                        put(p(0, pb + a), 1)?;
                        for j in 1..pb {
                            put(p(j + a - 1, pb + 1 - j), 1)?;
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        _ => return Err(domain(rule, label)),
    }
    Ok(out)
}

fn binom(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Label distribution after each insertion step, consuming `exponents` in order.
pub fn label_distributions(rule: RuleId, exponents: &[usize]) -> Result<Vec<LabelDistribution>> {
    let mut dist = LabelDistribution::new();
    dist.insert(rule.root(), 1);
    let mut out = Vec::with_capacity(exponents.len());
    let mut placed = 0u64;
    for (step, &e) in exponents.iter().enumerate() {
        let ctx = Context { step, placed };
        let mut next = LabelDistribution::new();
        for (&lab, &c) in &dist {
            for (child, mult) in offspring_distribution(rule, lab, e, ctx)? {
                let m = c.checked_mul(mult).ok_or(Error::Overflow)?;
                let slot = next.entry(child).or_insert(0);
                *slot = add(*slot, m)?;
            }
        }
        dist = next;
        placed += e as u64;
        out.push(dist.clone());
    }
    Ok(out)
}

/// Total mass of the generating tree on `shape`, consumed in the rule's orientation.
pub fn count_via_rule(rule: RuleId, shape: &MultisetShape) -> Result<Count> {
    count_via_rule_oriented(rule, shape, rule.orientation())
}

/// As [`count_via_rule`] with an explicit consumption order.
pub fn count_via_rule_oriented(rule: RuleId, shape: &MultisetShape, orientation: Orientation) -> Result<Count> {
    let dists = label_distributions(rule, &orientation.exponents(shape))?;
    dists.last().unwrap().values().try_fold(0, |acc, &c| add(acc, c))
}

/// Closed form for `R_112_2212`: the product of `s_i = 1 + sum_{j<=i} (v_j - 1)` over
/// the first `k - 1` insertions, where `v_j` is 2 for a single letter and 3 otherwise.
pub fn product_formula_112_2212(shape: &MultisetShape) -> Result<Count> {
    let ex = Orientation::LargestFirst.exponents(shape);
    let mut s: u64 = 1;
    let mut total: Count = 1;
    for &a in &ex[..ex.len() - 1] {
        s += if a == 1 { 1 } else { 2 };
        total = total.checked_mul(s).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// How a partial avoider's label is measured when checking a rule against enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelStatistic {
    /// Gaps where one copy of the next letter can be inserted.
    Sites,
    /// Gaps where the next letter can be inserted with another copy appended at the end.
    SitesWithTrailingCopy,
    /// Gaps where two adjacent copies of the next letter can be inserted.
    DoubleSites,
    /// Sites left / right of the rightmost descent top.
    AroundRightmostDescent,
    /// Sites right / left of the leftmost ascent top.
    AroundLeftmostAscent,
}

/// Pattern set, orientation and statistic used to check a rule node by node.
pub fn distribution_witnesses(rule: RuleId) -> Vec<(PatternSet, LabelStatistic)> {
    let own = rule_pattern_sets(rule);
    match rule {
        RuleId::R112_2121 => vec![
            (own[0].clone(), LabelStatistic::SitesWithTrailingCopy),
            (own[1].clone(), LabelStatistic::DoubleSites),
        ],
        RuleId::R121_1243A | RuleId::R121_1243B => {
            own.into_iter().map(|s| (s, LabelStatistic::AroundRightmostDescent)).collect()
        }
        RuleId::R121_1243C => own.into_iter().map(|s| (s, LabelStatistic::AroundLeftmostAscent)).collect(),
        _ => own.into_iter().map(|s| (s, LabelStatistic::Sites)).collect(),
    }
}

fn insert_at(w: &[Letter], g: usize, x: &[Letter]) -> Vec<Letter> {
    let mut v = Vec::with_capacity(w.len() + x.len());
    v.extend_from_slice(&w[..g]);
    v.extend_from_slice(x);
    v.extend_from_slice(&w[g..]);
    v
}

fn avoids_letters(w: &[Letter], set: &PatternSet) -> bool {
    set.patterns().iter().all(|p| !contains_letters(w, p))
}

/// The label of `w` when `next` is the value inserted next.
pub fn empirical_label(w: &[Letter], next: Letter, set: &PatternSet, stat: LabelStatistic) -> RuleLabel {
    let gaps = 0..=w.len();
    let sites: Vec<usize> = match stat {
        LabelStatistic::SitesWithTrailingCopy => gaps
            .filter(|&g| {
                let mut v = insert_at(w, g, &[next]);
                v.push(next);
                avoids_letters(&v, set)
            })
            .collect(),
        LabelStatistic::DoubleSites => gaps.filter(|&g| avoids_letters(&insert_at(w, g, &[next, next]), set)).collect(),
        _ => gaps.filter(|&g| avoids_letters(&insert_at(w, g, &[next]), set)).collect(),
    };
    let n = sites.len() as u64;
    match stat {
        LabelStatistic::AroundRightmostDescent => match (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] > w[i + 1]) {
            None => RuleLabel::Pair(0, n),
            Some(p) => {
                let left = sites.iter().filter(|&&g| g <= p).count() as u64;
                RuleLabel::Pair(left, n - left)
            }
        },
        LabelStatistic::AroundLeftmostAscent => match (1..w.len()).find(|&i| w[i - 1] < w[i]) {
            None => RuleLabel::Pair(0, n),
            Some(p) => {
                let right = sites.iter().filter(|&&g| g > p).count() as u64;
                RuleLabel::Pair(right, n - right)
            }
        },
        _ => RuleLabel::Sites(n),
    }
}

/// Inserts `e` copies of `x` into `w` in every possible way.
fn insertions(w: &[Letter], x: Letter, e: usize) -> Vec<Vec<Letter>> {
    let n = w.len() + e;
    let mut out = Vec::new();
    let mut pos = Vec::with_capacity(e);
    fn rec(w: &[Letter], x: Letter, n: usize, e: usize, start: usize, pos: &mut Vec<usize>, out: &mut Vec<Vec<Letter>>) {
        if pos.len() == e {
            let mut v = Vec::with_capacity(n);
            let mut k = 0;
            let mut it = w.iter();
            for i in 0..n {
                if k < e && pos[k] == i {
                    v.push(x);
                    k += 1;
                } else {
                    v.push(*it.next().unwrap());
                }
            }
            out.push(v);
            return;
        }
        for p in start..n {
            pos.push(p);
            rec(w, x, n, e, p + 1, pos, out);
            pos.pop();
        }
    }
    rec(w, x, n, e, 0, &mut pos, &mut out);
    out
}

/// First disagreement between the rule and node-by-node enumeration on `shape`.
///
/// For every partial avoider the multiset of its children's labels must equal the rule's
/// offspring distribution for the parent's label; at the final step only the number of
/// children is compared.
pub fn check_distribution(
    rule: RuleId,
    set: &PatternSet,
    stat: LabelStatistic,
    shape: &MultisetShape,
) -> Result<Option<String>> {
    let k = shape.height();
    let order: Vec<Letter> = match rule.orientation() {
        Orientation::SmallestFirst => (1..=k as Letter).collect(),
        Orientation::LargestFirst => (1..=k as Letter).rev().collect(),
    };
    let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut placed = 0u64;
    for (step, &x) in order.iter().enumerate() {
        let e = shape.exponents()[x as usize - 1];
        let next_letter = order.get(step + 1).copied();
        let mut next_level = Vec::new();
        for parent in &level {
            let lab = empirical_label(parent, x, set, stat);
            let expected = offspring_distribution(rule, lab, e, Context { step, placed })?;
            let children: Vec<Vec<Letter>> =
                insertions(parent, x, e).into_iter().filter(|c| avoids_letters(c, set)).collect();
            match next_letter {
                Some(y) => {
                    let mut got = LabelDistribution::new();
                    for c in &children {
                        *got.entry(empirical_label(c, y, set, stat)).or_insert(0) += 1;
                    }
                    if got != expected {
                        return Ok(Some(format!(
                            "parent {parent:?} label {lab} exponent {e}: rule {expected:?}, enumeration {got:?}"
                        )));
                    }
                }
                None => {
                    let total: Count = expected.values().sum();
                    if total != children.len() as Count {
                        return Ok(Some(format!(
                            "parent {parent:?} label {lab} exponent {e}: rule {total} children, enumeration {}",
                            children.len()
                        )));
                    }
                }
            }
            next_level.extend(children);
        }
        level = next_level;
        placed += e as u64;
    }
    Ok(None)
}

/// Result of comparing a rule with direct counting on every shape up to a size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: RuleId,
    pub max_size: usize,
    /// Number of (pattern set, shape) pairs compared.
    pub cases: usize,
    /// First disagreement: set, shape, rule count, direct count.
    pub mismatch: Option<(PatternSet, MultisetShape, Count, Count)>,
}

impl RuleReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares `count_via_rule` with `count_multiset` for every covered set and every reduced
/// shape of size `<= max_size`.
pub fn verify_rule(rule: RuleId, max_size: usize) -> Result<RuleReport> {
    let shapes = MultisetShape::all_up_to(max_size);
    let mut cases = 0;
    for cov in rule_coverage(rule) {
        let results: Vec<(Count, Count)> = shapes
            .par_iter()
            .map(|s| Ok((count_via_rule_oriented(rule, s, cov.orientation)?, count_multiset(s, &cov.set)?)))
            .collect::<Result<_>>()?;
        for (s, (a, b)) in shapes.iter().zip(results) {
            cases += 1;
            if a != b {
                return Ok(RuleReport { rule, max_size, cases, mismatch: Some((cov.set.clone(), s.clone(), a, b)) });
            }
        }
    }
    Ok(RuleReport { rule, max_size, cases, mismatch: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &str) -> MultisetShape {
        s.parse().unwrap()
    }

    #[test]
    fn names_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(r.name().parse::<RuleId>().unwrap(), r);
        }
        assert!("R_999".parse::<RuleId>().is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_via_rule(RuleId::R112_2212, &shape("2,2")).unwrap(), 3);
        for k in 1..=8 {
            let s = MultisetShape::new(vec![1; k]).unwrap();
            let fact: u64 = (1..=k as u64).product();
            assert_eq!(count_via_rule(RuleId::R112_2212, &s).unwrap(), fact);
            assert_eq!(product_formula_112_2212(&s).unwrap(), fact);
        }
    }

    #[test]
    fn stated_transitions() {
        let d = offspring_distribution(RuleId::R132_2213, RuleLabel::Sites(1), 3, Context::default()).unwrap();
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(RuleLabel::Sites(4), 1)]);
        let d = offspring_distribution(RuleId::R112_2312, RuleLabel::Sites(5), 1, Context::default()).unwrap();
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(RuleLabel::Sites(6), 5)]);
        let d = offspring_distribution(RuleId::R121_1243A, RuleLabel::Pair(0, 3), 2, Context::default()).unwrap();
        let want = [(0, 5), (1, 4), (2, 3)].map(|(a, b)| (RuleLabel::Pair(a, b), 1));
        assert_eq!(d.into_iter().collect::<Vec<_>>(), want.to_vec());
    }

    #[test]
    fn domain_errors() {
        let ctx = Context::default();
        assert!(offspring_distribution(RuleId::R112_2212, RuleLabel::Sites(0), 1, ctx).is_err());
        assert!(offspring_distribution(RuleId::R112_2212, RuleLabel::Pair(1, 1), 1, ctx).is_err());
        assert!(offspring_distribution(RuleId::R121_1243A, RuleLabel::Pair(0, 0), 1, ctx).is_err());
        assert!(offspring_distribution(RuleId::R112_2121, RuleLabel::Sites(5), 1, ctx).is_err());
    }

    #[test]
    fn coverage_includes_reverse_complements() {
        let cov = rule_coverage(RuleId::R121_1243C);
        assert!(cov.iter().any(|c| c.set == set("121;1234") && c.orientation == Orientation::LargestFirst));
        assert!(cov.iter().any(|c| c.set == set("121;2134")));
    }
}
