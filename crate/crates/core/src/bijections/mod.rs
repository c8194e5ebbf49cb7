//! Explicit bijections between avoidance classes and an exhaustive verifier.

mod encoding;
mod maps;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::enumerate::{enumerate_multiset, Count};
use crate::error::{Error, Result};
use crate::pattern::{Pattern, PatternSet};
use crate::shape::MultisetShape;
use crate::word::{Letter, Word};

pub use encoding::{decode, encode, EncodingStep, EncodingVector};
pub use maps::{
    lower_run_flip, rearrange_lower_runs, reverse_complement, right_left_maxima, rightmost_anchor, run_rearrange,
    simion_schmidt, swap_repeated,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipMode {
    With121,
    With112,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BijectionId {
    /// `{111,1221} -> {111,2112}`
    SwapDoubled,
    /// `{1^(r+1), tau} -> {1^(r+1), tau^c}` where `tau` has every letter exactly `r` times.
    SwapRepeated { r: usize, tau: Pattern },
    /// `{122,2212} -> {212,1222}`
    RightmostAnchor,
    /// `{112,1211} -> {121,1112}`, the previous map conjugated by reverse-complement.
    RightmostAnchorRc,
    /// `{121,1223} -> {121,2213}`
    RunRearrange,
    /// `{112,1231} -> {121,1132}`
    Encoding,
    /// `{132, 1 2^r 3} -> {123, 1 3 2^r}`
    SimionSchmidt { r: usize },
    /// `{121,1233} -> {121,2133}` or `{112,1233} -> {112,2133}`
    LowerRunFlip(FlipMode),
}

/// How a map is obtained from the underlying construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugation {
    None,
    ReverseComplement,
}

impl BijectionId {
    /// The ids with their default parameters.
    pub fn all() -> Vec<BijectionId> {
        vec![
            BijectionId::SwapDoubled,
            BijectionId::RightmostAnchor,
            BijectionId::RightmostAnchorRc,
            BijectionId::RunRearrange,
            BijectionId::Encoding,
            BijectionId::SimionSchmidt { r: 2 },
            BijectionId::LowerRunFlip(FlipMode::With121),
            BijectionId::LowerRunFlip(FlipMode::With112),
        ]
    }

    pub fn name(&self) -> String {
        match self {
            BijectionId::SwapDoubled => "swap_doubled".into(),
            BijectionId::SwapRepeated { r, tau } => format!("swap_repeated:{r}:{tau}"),
            BijectionId::RightmostAnchor => "rightmost_anchor".into(),
            BijectionId::RightmostAnchorRc => "rightmost_anchor_rc".into(),
            BijectionId::RunRearrange => "run_rearrange_f".into(),
            BijectionId::Encoding => "encoding".into(),
            BijectionId::SimionSchmidt { r: 2 } => "simion_schmidt_ext".into(),
            BijectionId::SimionSchmidt { r } => format!("simion_schmidt_ext:{r}"),
            BijectionId::LowerRunFlip(FlipMode::With121) => "lower_run_flip_121".into(),
            BijectionId::LowerRunFlip(FlipMode::With112) => "lower_run_flip_112".into(),
        }
    }

    /// Source and target pattern sets.
    pub fn sets(&self) -> (PatternSet, PatternSet) {
        let s = |v: &[&str]| -> PatternSet {
            PatternSet::new(v.iter().map(|p| p.parse().unwrap()).collect()).unwrap()
        };
        match self {
            BijectionId::SwapDoubled => (s(&["111", "1221"]), s(&["111", "2112"])),
            BijectionId::SwapRepeated { r, tau } => {
                let c = Pattern::constant(r + 1).unwrap();
                (
                    PatternSet::new(vec![c.clone(), tau.clone()]).unwrap(),
                    PatternSet::new(vec![c, tau.complement()]).unwrap(),
                )
            }
            BijectionId::RightmostAnchor => (s(&["122", "2212"]), s(&["212", "1222"])),
            BijectionId::RightmostAnchorRc => (s(&["112", "1211"]), s(&["121", "1112"])),
            BijectionId::RunRearrange => (s(&["121", "1223"]), s(&["121", "2213"])),
            BijectionId::Encoding => (s(&["112", "1231"]), s(&["121", "1132"])),
            BijectionId::SimionSchmidt { r } => {
                let mut a = vec![1];
                a.extend(std::iter::repeat(2).take(*r));
                a.push(3);
                let mut b = vec![1, 3];
                b.extend(std::iter::repeat(2).take(*r));
                let p = |v: Vec<Letter>| Pattern::new(Word::new(v).unwrap()).unwrap();
                (
                    PatternSet::new(vec!["132".parse().unwrap(), p(a)]).unwrap(),
                    PatternSet::new(vec!["123".parse().unwrap(), p(b)]).unwrap(),
                )
            }
            BijectionId::LowerRunFlip(FlipMode::With121) => (s(&["121", "1233"]), s(&["121", "2133"])),
            BijectionId::LowerRunFlip(FlipMode::With112) => (s(&["112", "1233"]), s(&["112", "2133"])),
        }
    }

    pub fn conjugation(&self) -> Conjugation {
        match self {
            BijectionId::RightmostAnchorRc => Conjugation::ReverseComplement,
            _ => Conjugation::None,
        }
    }

    /// True for parameterised extensions that are certified only by running the verifier.
    pub fn is_generalized(&self) -> bool {
        matches!(
            self,
            BijectionId::SwapRepeated { r: 3.., .. } | BijectionId::SimionSchmidt { r: 0 | 1 | 3.. }
        )
    }

    /// Statistics the verifier checks by default.
    pub fn statistics(&self) -> &'static [Statistic] {
        match self {
            BijectionId::RunRearrange => &[
                Statistic::Multiplicities,
                Statistic::LastLetter,
                Statistic::RightLeftMaximaValues,
            ],
            _ => &[Statistic::Multiplicities],
        }
    }

    fn check_params(&self) -> Result<()> {
        match self {
            BijectionId::SwapRepeated { r, tau } => {
                let m = tau.word().multiplicities();
                if *r == 0 || m.iter().any(|&x| x != *r) {
                    return Err(Error::Invalid(format!("{tau} must use each letter exactly {r} times")));
                }
                Ok(())
            }
            BijectionId::SimionSchmidt { r: 0 } => Err(Error::Invalid("r must be positive".into())),
            _ => Ok(()),
        }
    }

    /// Maps `w` without checking that it lies in the source class.
    fn map_unchecked(&self, w: &[Letter]) -> Vec<Letter> {
        match self {
            BijectionId::SwapDoubled => swap_repeated(w, 2),
            BijectionId::SwapRepeated { r, .. } => swap_repeated(w, *r),
            BijectionId::RightmostAnchor => rightmost_anchor(w),
            BijectionId::RightmostAnchorRc => reverse_complement(&rightmost_anchor(&reverse_complement(w))),
            BijectionId::RunRearrange => run_rearrange(w),
            BijectionId::Encoding => {
                encoding::encoding_map(w).expect("encoding of an avoider must decode uniquely")
            }
            BijectionId::SimionSchmidt { .. } => simion_schmidt(w),
            BijectionId::LowerRunFlip(_) => lower_run_flip(w),
        }
    }

    /// Applies the map, rejecting words outside the source class.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.check_params()?;
        let (src, _) = self.sets();
        check_source(w, &src)?;
        Ok(Word::from_vec_unchecked(self.map_unchecked(w.letters())))
    }
}

fn check_source(w: &Word, src: &PatternSet) -> Result<()> {
    for p in src.patterns() {
        if crate::containment::contains(w, p) {
            return Err(Error::Precondition { word: w.to_string(), set: p.to_string() });
        }
    }
    Ok(())
}

impl fmt::Display for BijectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for BijectionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let t = lower.strip_prefix("bij_").unwrap_or(&lower);
        let mut parts = t.split(':');
        let head = parts.next().unwrap_or("");
        let args: Vec<&str> = parts.collect();
        let unknown = || Error::UnknownId(s.to_string());
        let num = |a: &str| a.parse::<usize>().map_err(|_| unknown());
        let id = match (head, args.as_slice()) {
            ("swap_doubled", []) => BijectionId::SwapDoubled,
            ("swap_repeated", [r, tau]) => BijectionId::SwapRepeated { r: num(r)?, tau: tau.parse()? },
            ("rightmost_anchor", []) => BijectionId::RightmostAnchor,
            ("rightmost_anchor_rc", []) => BijectionId::RightmostAnchorRc,
            ("run_rearrange_f" | "run_rearrange", []) => BijectionId::RunRearrange,
            ("encoding", []) => BijectionId::Encoding,
            ("simion_schmidt_ext" | "simion_schmidt", []) => BijectionId::SimionSchmidt { r: 2 },
            ("simion_schmidt_ext" | "simion_schmidt", [r]) => BijectionId::SimionSchmidt { r: num(r)? },
            ("lower_run_flip_121" | "lower_run_flip_f_121", []) => BijectionId::LowerRunFlip(FlipMode::With121),
            ("lower_run_flip_112" | "lower_run_flip_f_112", []) => BijectionId::LowerRunFlip(FlipMode::With112),
            _ => return Err(unknown()),
        };
        id.check_params()?;
        Ok(id)
    }
}

/// Word statistics a bijection may be required to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    Multiplicities,
    LastLetter,
    RightLeftMaximaValues,
    RightLeftMaximaPositions,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::Multiplicities => "multiplicities",
            Statistic::LastLetter => "last-letter",
            Statistic::RightLeftMaximaValues => "rl-maxima-values",
            Statistic::RightLeftMaximaPositions => "rl-maxima-positions",
        }
    }

    pub fn preserved(self, a: &[Letter], b: &[Letter]) -> bool {
        match self {
            Statistic::Multiplicities => {
                let mut x = a.to_vec();
                let mut y = b.to_vec();
                x.sort_unstable();
                y.sort_unstable();
                x == y
            }
            Statistic::LastLetter => a.last() == b.last(),
            Statistic::RightLeftMaximaValues => {
                let v = |w: &[Letter]| right_left_maxima(w).into_iter().map(|p| p.1).collect::<Vec<_>>();
                v(a) == v(b)
            }
            Statistic::RightLeftMaximaPositions => right_left_maxima(a) == right_left_maxima(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Word,
    pub image: Word,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub id: BijectionId,
    pub shape: MultisetShape,
    pub domain_size: Count,
    pub codomain_size: Count,
    pub injective: bool,
    pub codomain_ok: bool,
    pub statistics: Vec<(Statistic, bool)>,
    pub counterexample: Option<Counterexample>,
}

impl BijectionReport {
    /// Injective, into the target class, onto it by cardinality, and every statistic kept.
    pub fn passed(&self) -> bool {
        self.injective
            && self.codomain_ok
            && self.domain_size == self.codomain_size
            && self.statistics.iter().all(|s| s.1)
    }
}

/// Maps every source avoider of `shape` and checks the result. Counterexamples are the
/// lexicographically first failing source word.
pub fn verify_bijection(id: &BijectionId, shape: &MultisetShape) -> Result<BijectionReport> {
    verify_bijection_with(id, shape, id.statistics())
}

/// [`verify_bijection`] on every reduced shape of size `<= max_size`, in shape order.
pub fn verify_bijection_up_to(id: &BijectionId, max_size: usize) -> Result<Vec<BijectionReport>> {
    MultisetShape::all_up_to(max_size).iter().map(|s| verify_bijection(id, s)).collect()
}

/// Like [`verify_bijection`] with an explicit list of statistics to check.
pub fn verify_bijection_with(id: &BijectionId, shape: &MultisetShape, stats: &[Statistic]) -> Result<BijectionReport> {
    id.check_params()?;
    let (src, tgt) = id.sets();
    let domain: Vec<Word> = enumerate_multiset(shape, &src)?.collect();
    // lexicographic, so membership is a binary search
    let target: Vec<Vec<Letter>> = enumerate_multiset(shape, &tgt)?.map(Word::into_letters).collect();
    let images: Vec<(Vec<Letter>, bool, Vec<bool>)> = domain
        .par_iter()
        .map(|w| {
            let img = id.map_unchecked(w.letters());
            let ok = target.binary_search(&img).is_ok();
            let kept = stats.iter().map(|s| s.preserved(w.letters(), &img)).collect();
            (img, ok, kept)
        })
        .collect();
    let codomain_size = target.len() as Count;

    let mut counterexample: Option<(usize, String)> = None;
    let mut note = |i: usize, reason: String| {
        if counterexample.as_ref().map_or(true, |c| i < c.0) {
            counterexample = Some((i, reason));
        }
    };
    let mut codomain_ok = true;
    let mut kept = vec![true; stats.len()];
    for (i, (_, ok, k)) in images.iter().enumerate() {
        if !ok {
            codomain_ok = false;
            note(i, format!("image is not in Av({})", tgt.braced()));
        }
        for (j, &b) in k.iter().enumerate() {
            if !b {
                if kept[j] {
                    note(i, format!("{} not preserved", stats[j].name()));
                }
                kept[j] = false;
            }
        }
    }
    let mut order: Vec<usize> = (0..images.len()).collect();
    order.sort_by(|&a, &b| images[a].0.cmp(&images[b].0).then(a.cmp(&b)));
    let mut injective = true;
    for pair in order.windows(2) {
        if images[pair[0]].0 == images[pair[1]].0 {
            injective = false;
            note(pair[1], format!("same image as {}", domain[pair[0]]));
        }
    }
    let counterexample = counterexample.map(|(i, reason)| Counterexample {
        word: domain[i].clone(),
        image: Word::from_vec_unchecked(images[i].0.clone()),
        reason,
    });
    Ok(BijectionReport {
        id: id.clone(),
        shape: shape.clone(),
        domain_size: domain.len() as Count,
        codomain_size,
        injective,
        codomain_ok,
        statistics: stats.iter().copied().zip(kept).collect(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sh(s: &str) -> MultisetShape {
        s.parse().unwrap()
    }

    #[test]
    fn names_round_trip() {
        for id in BijectionId::all() {
            assert_eq!(id.name().parse::<BijectionId>().unwrap(), id);
        }
        let g: BijectionId = "swap_repeated:3:111222".parse().unwrap();
        assert_eq!(g.name().parse::<BijectionId>().unwrap(), g);
        assert!("swap_repeated:2:1123".parse::<BijectionId>().is_err());
        assert!("nope".parse::<BijectionId>().is_err());
    }

    #[test]
    fn preconditions() {
        let e = BijectionId::SwapDoubled.apply(&w("1221")).unwrap_err();
        assert_eq!(e, Error::Precondition { word: "1221".into(), set: "1221".into() });
        assert_eq!(BijectionId::SwapDoubled.apply(&w("1212")).unwrap(), w("2121"));
    }

    #[test]
    fn small_reports() {
        let r = verify_bijection(&BijectionId::SwapDoubled, &sh("2,2,1")).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_bijection(&BijectionId::SimionSchmidt { r: 2 }, &sh("1,1,1,1")).unwrap();
        assert_eq!(r.domain_size, r.codomain_size);
        let r = verify_bijection(&BijectionId::SimionSchmidt { r: 2 }, &sh("1,1,1")).unwrap();
        assert_eq!(r.domain_size, 5);
        let r = verify_bijection(&BijectionId::Encoding, &sh("2,2")).unwrap();
        assert!(r.passed());
    }
}
