//! Maps that reorder letters of an avoider into an avoider of another set.

use crate::word::Letter;

/// Swaps the values of letters that occur exactly `r` times: listing them in
/// decreasing order as `d_1 > ... > d_m`, value `d_i` becomes `d_{m+1-i}`.
pub fn swap_repeated(w: &[Letter], r: usize) -> Vec<Letter> {
    let k = w.iter().copied().max().unwrap_or(0) as usize;
    let mut count = vec![0usize; k + 1];
    for &x in w {
        count[x as usize] += 1;
    }
    let d: Vec<Letter> = (1..=k as Letter).rev().filter(|&x| count[x as usize] == r).collect();
    let mut map: Vec<Letter> = (0..=k as Letter).collect();
    for (i, &x) in d.iter().enumerate() {
        map[x as usize] = d[d.len() - 1 - i];
    }
    w.iter().map(|&x| map[x as usize]).collect()
}

/// Recursive on the height: the copies of the maximum letter `k` keep the position of
/// the rightmost `k` and sit at `{q}`, `{q-1, q}` or the first `b_k` positions when
/// there are one, two or more copies.
pub fn rightmost_anchor(w: &[Letter]) -> Vec<Letter> {
    let k = match w.iter().copied().max() {
        None => return Vec::new(),
        Some(k) => k,
    };
    if k == 1 {
        return w.to_vec();
    }
    let bk = w.iter().filter(|&&x| x == k).count();
    let q = w.iter().rposition(|&x| x == k).unwrap();
    let rest: Vec<Letter> = w.iter().copied().filter(|&x| x != k).collect();
    let rest = rightmost_anchor(&rest);
    let top = |i: usize| match bk {
        1 => i == q,
        2 => i + 1 == q || i == q,
        _ => i < bk,
    };
    let mut it = rest.into_iter();
    (0..w.len()).map(|i| if top(i) { k } else { it.next().unwrap() }).collect()
}

/// Reverse of the complement.
pub fn reverse_complement(w: &[Letter]) -> Vec<Letter> {
    let k = w.iter().copied().max().unwrap_or(0);
    w.iter().rev().map(|&x| k + 1 - x).collect()
}

/// Maximal runs of letters `>= thr` (upper) and `< thr` (lower), as `(is_upper, start, end)`.
fn runs(w: &[Letter], thr: Letter) -> Vec<(bool, usize, usize)> {
    let mut out: Vec<(bool, usize, usize)> = Vec::new();
    for (i, &x) in w.iter().enumerate() {
        let up = x >= thr;
        match out.last_mut() {
            Some(last) if last.0 == up => last.2 = i + 1,
            _ => out.push((up, i, i + 1)),
        }
    }
    out
}

/// Reorders the lower runs of `w` (letters below `thr`). Lower runs starting at or after
/// `split` are late: they move to the front of the run order, reversed and each read
/// backwards, followed by the early runs in their original order. Upper runs stay put
/// and the lower-run slots are refilled in the new order.
pub fn rearrange_lower_runs(w: &[Letter], thr: Letter, split: usize) -> Vec<Letter> {
    let rs = runs(w, thr);
    let lows: Vec<(usize, &[Letter])> = rs.iter().filter(|r| !r.0).map(|r| (r.1, &w[r.1..r.2])).collect();
    let mut order: Vec<Vec<Letter>> = lows
        .iter()
        .rev()
        .filter(|(p, _)| *p >= split)
        .map(|(_, r)| r.iter().rev().copied().collect())
        .collect();
    order.extend(lows.iter().filter(|(p, _)| *p < split).map(|(_, r)| r.to_vec()));
    let mut it = order.into_iter();
    let mut out = Vec::with_capacity(w.len());
    for &(up, s, e) in &rs {
        if up {
            out.extend_from_slice(&w[s..e]);
        } else {
            out.extend(it.next().unwrap());
        }
    }
    out
}

/// Scans the right-to-left maxima `k = k_0 > k_1 > ...`; each new segment ending at the
/// next maximum is appended and the lower runs below that maximum are rearranged.
pub fn run_rearrange(w: &[Letter]) -> Vec<Letter> {
    let k = match w.iter().copied().max() {
        None => return Vec::new(),
        Some(k) => k,
    };
    let q = w.iter().rposition(|&x| x == k).unwrap();
    let mut cur: Vec<Letter> = w[..q].iter().rev().copied().collect();
    cur.push(k);
    let mut rest = &w[q + 1..];
    while !rest.is_empty() {
        let kj = *rest.iter().max().unwrap();
        let qq = rest.iter().rposition(|&x| x == kj).unwrap();
        let split = cur.len();
        cur.extend_from_slice(&rest[..=qq]);
        cur = rearrange_lower_runs(&cur, kj, split);
        rest = &rest[qq + 1..];
    }
    cur
}

/// Anchors are repeated letters `a_1 > a_2 > ...`: `a_1` is the largest repeated letter and
/// each next anchor is the largest letter below the current one occurring at least twice to
/// the right of its second-to-last copy. Before each anchor's second-to-last copy, the lower
/// runs are rearranged; runs after the previous anchor count as late.
pub fn lower_run_flip(w: &[Letter]) -> Vec<Letter> {
    let mut pi = w.to_vec();
    let k = pi.iter().copied().max().unwrap_or(0) as usize;
    let mut count = vec![0usize; k + 1];
    for &x in &pi {
        count[x as usize] += 1;
    }
    let Some(mut a) = (1..=k).rev().find(|&x| count[x] >= 2).map(|x| x as Letter) else {
        return pi;
    };
    let mut split = 0;
    loop {
        let occ: Vec<usize> = (0..pi.len()).filter(|&i| pi[i] == a).collect();
        let idx = occ[occ.len() - 2];
        let pre = rearrange_lower_runs(&pi[..idx], a, split);
        pi[..idx].copy_from_slice(&pre);
        split = idx + 1;
        let mut right = vec![0usize; k + 1];
        for &x in &pi[idx + 1..] {
            right[x as usize] += 1;
        }
        match (1..a as usize).rev().find(|&x| right[x] >= 2) {
            Some(x) => a = x as Letter,
            None => break,
        }
    }
    pi
}

/// Letters that are a new or repeated left-to-right minimum stay (blue); the remaining
/// (red) letters are rewritten in weakly decreasing order in their positions.
pub fn simion_schmidt(w: &[Letter]) -> Vec<Letter> {
    let mut cur = Letter::MAX;
    let blue: Vec<bool> = w
        .iter()
        .map(|&x| {
            if x <= cur {
                cur = x;
                true
            } else {
                false
            }
        })
        .collect();
    let mut reds: Vec<Letter> = w.iter().zip(&blue).filter(|(_, &b)| !b).map(|(&x, _)| x).collect();
    reds.sort_unstable_by(|a, b| b.cmp(a));
    let mut it = reds.into_iter();
    w.iter().zip(&blue).map(|(&x, &b)| if b { x } else { it.next().unwrap() }).collect()
}

/// `(position, value)` of right-to-left maxima, scanning from the right.
pub fn right_left_maxima(w: &[Letter]) -> Vec<(usize, Letter)> {
    let mut out = Vec::new();
    let mut m = 0;
    for (i, &x) in w.iter().enumerate().rev() {
        if x > m {
            out.push((i, x));
            m = x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Vec<Letter> {
        s.bytes().map(|b| (b - b'0') as Letter).collect()
    }

    #[test]
    fn swaps() {
        assert_eq!(swap_repeated(&l("1212"), 2), l("2121"));
        assert_eq!(swap_repeated(&l("132"), 2), l("132"));
        assert_eq!(swap_repeated(&l("31342"), 2), l("31342"));
        assert_eq!(swap_repeated(&l("3132"), 2), l("3132"));
        assert_eq!(swap_repeated(&l("31312"), 2), l("13132"));
    }

    #[test]
    fn anchors() {
        assert_eq!(rightmost_anchor(&l("1111")), l("1111"));
        assert_eq!(rightmost_anchor(&l("21")), l("21"));
        assert_eq!(rightmost_anchor(&l("212")), l("122"));
        assert_eq!(rightmost_anchor(&l("221")), l("221"));
    }

    #[test]
    fn fixed_points() {
        assert_eq!(simion_schmidt(&l("4321")), l("4321"));
        assert_eq!(simion_schmidt(&l("111")), l("111"));
        assert_eq!(lower_run_flip(&l("3142")), l("3142"));
        assert_eq!(run_rearrange(&l("1123")), l("2113"));
        assert_eq!(run_rearrange(&l("3")), l("3"));
    }

    #[test]
    fn maxima() {
        assert_eq!(right_left_maxima(&l("31421")), vec![(4, 1), (3, 2), (2, 4)]);
    }
}
