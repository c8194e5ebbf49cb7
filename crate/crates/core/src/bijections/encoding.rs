//! Encoding of avoiders by the growth of the word as the letters `k, k-1, ..., 1` are inserted.

use crate::word::Letter;

/// One step of an encoding: a position plus an optional annotation.
pub type EncodingStep = (usize, Option<usize>);

/// One entry per inserted letter `k-1, ..., 1`.
pub type EncodingVector = Vec<EncodingStep>;

/// 1-based position of the bottom of the rightmost ascent, 0 if there is none.
fn rightmost_ascent(w: &[Letter]) -> usize {
    (0..w.len().saturating_sub(1)).rev().find(|&r| w[r] < w[r + 1]).map_or(0, |r| r + 1)
}

/// 1-based position of the top of the rightmost descent, 0 if there is none.
fn rightmost_descent(w: &[Letter]) -> usize {
    (0..w.len().saturating_sub(1)).rev().find(|&r| w[r] > w[r + 1]).map_or(0, |r| r + 1)
}

fn restrict(w: &[Letter], t: Letter) -> Vec<Letter> {
    w.iter().copied().filter(|&x| x >= t).collect()
}

fn step_annotation(p0: usize, p1: usize, a: usize, pos: usize, cap: bool) -> Option<usize> {
    if p0 > 0 && a == 1 && p1 == p0 + 1 {
        Some(if cap { pos.min(p0 + 1) } else { pos })
    } else {
        None
    }
}

/// Encodes an avoider of `{112, 1231}` by tracking the rightmost ascent.
pub fn encode(w: &[Letter]) -> EncodingVector {
    let k = w.iter().copied().max().unwrap_or(0);
    let mut prev = restrict(w, k);
    let mut code = Vec::new();
    for t in (1..k).rev() {
        let cur = restrict(w, t);
        let a = cur.iter().filter(|&&x| x == t).count();
        let (p0, p1) = (rightmost_ascent(&prev), rightmost_ascent(&cur));
        let pos = cur.iter().position(|&x| x == t).map_or(0, |i| i + 1);
        code.push((p1, step_annotation(p0, p1, a, pos, false)));
        prev = cur;
    }
    code
}

fn descent_step(prev: &[Letter], cur: &[Letter], t: Letter, a: usize) -> EncodingStep {
    let (p0, p1) = (rightmost_descent(prev), rightmost_descent(cur));
    let pos = cur.iter().position(|&x| x == t).map_or(0, |i| i + 1);
    (p1, step_annotation(p0, p1, a, pos, true))
}

/// Rebuilds the avoider of `{121, 1132}` with the given multiplicities (indexed by letter
/// minus one) whose descent encoding is `code`. Returns `None` when no child or more than
/// one child matches a step.
pub fn decode(code: &[EncodingStep], mult: &[usize]) -> Option<Vec<Letter>> {
    let k = mult.len();
    if k == 0 || code.len() + 1 != k {
        return None;
    }
    let mut cur = vec![k as Letter; mult[k - 1]];
    for (step, t) in code.iter().zip((1..k as Letter).rev()) {
        let a = mult[t as usize - 1];
        let mut found: Option<Vec<Letter>> = None;
        // Every letter already placed exceeds t, so an avoider of 121 keeps the copies of t
        // together, and such a run never creates 121. It creates 1132 exactly when there are
        // two or more copies and a descent follows the run.
        let increasing_from = (0..cur.len()).rev().find(|&i| i + 1 < cur.len() && cur[i] > cur[i + 1]).map_or(0, |i| i + 1);
        for g in 0..=cur.len() {
            if a >= 2 && g < increasing_from {
                continue;
            }
            let mut child = Vec::with_capacity(cur.len() + a);
            child.extend_from_slice(&cur[..g]);
            child.extend(std::iter::repeat(t).take(a));
            child.extend_from_slice(&cur[g..]);
            if descent_step(&cur, &child, t, a) == *step {
                if found.is_some() {
                    return None;
                }
                found = Some(child);
            }
        }
        cur = found?;
    }
    Some(cur)
}

/// Encodes with ascents and decodes with descents.
pub fn encoding_map(w: &[Letter]) -> Option<Vec<Letter>> {
    let k = w.iter().copied().max().unwrap_or(0) as usize;
    if k == 0 {
        return Some(Vec::new());
    }
    let mut mult = vec![0usize; k];
    for &x in w {
        mult[x as usize - 1] += 1;
    }
    decode(&encode(w), &mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        assert_eq!(rightmost_ascent(&[2, 1, 3, 2]), 2);
        assert_eq!(rightmost_ascent(&[3, 2, 1]), 0);
        assert_eq!(rightmost_descent(&[1, 3, 2, 2]), 2);
        assert_eq!(rightmost_descent(&[1, 1]), 0);
    }

    #[test]
    fn constant_words() {
        assert_eq!(encode(&[1, 1, 1]), vec![]);
        assert_eq!(encoding_map(&[1, 1, 1]), Some(vec![1, 1, 1]));
    }
}
