//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion.
//!
//! `ACCEPTANCE_ONLY=1,3` restricts the run to the listed criteria.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use mpav::bijections::{verify_bijection_up_to, verify_bijection_with, BijectionId, Statistic};
use mpav::classify::{family_3x3, fold_complements, group_m_equiv, group_series, check_conjecture, Witness};
use mpav::ferrers::{
    check_ft_equiv, check_set_sf_equiv, check_sf_equiv, count_avoiding_fillings, FerrersShape, FillingClass,
};
use mpav::golden::{GoldenTable, TableId};
use mpav::succession::{product_formula_112_2212, verify_rule, RuleId};
use mpav::{composition_series, count_multiset, set, word_to_matrix, BinaryMatrix, Count, MultisetShape, PatternSet};
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
    /// A failure that is understood and documented; the run still succeeds if the observed
    /// values are the documented ones.
    known: Option<bool>,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), known: None }
    }
}

#[derive(Default)]
struct Ctx {
    series: HashMap<PatternSet, Vec<Count>>,
}

impl Ctx {
    /// Composition counts for every requested set, each up to its requested `n`.
    fn ensure(&mut self, jobs: &[(PatternSet, usize)]) {
        let todo: Vec<&(PatternSet, usize)> =
            jobs.iter().filter(|(s, n)| self.series.get(s).map_or(true, |v| v.len() < *n)).collect();
        let done: Vec<(PatternSet, Vec<Count>)> = todo
            .par_iter()
            .map(|(s, n)| (s.clone(), composition_series(*n, s).unwrap().counts().to_vec()))
            .collect();
        self.series.extend(done);
    }

    fn value(&self, s: &PatternSet, n: usize) -> Count {
        self.series[s][n - 1]
    }
}

fn table_jobs(t: &GoldenTable) -> Vec<(PatternSet, usize)> {
    t.rows.iter().flat_map(|r| r.sets.iter().map(move |s| (s.clone(), t.start() + r.values.len() - 1))).collect()
}

fn compare_table(ctx: &mut Ctx, t: &GoldenTable) -> (usize, Vec<String>) {
    ctx.ensure(&table_jobs(t));
    let mut checked = 0;
    let mut bad = vec![];
    for r in &t.rows {
        for s in &r.sets {
            for (n, want) in r.indexed(t.start()) {
                checked += 1;
                let got = ctx.value(s, n);
                if got != want {
                    bad.push(format!("{} n={n}: {got} != {want}", s.braced()));
                }
            }
        }
    }
    (checked, bad)
}

fn small_table(ctx: &mut Ctx) -> Outcome {
    let t = TableId::Appendix2.load().unwrap();
    let (checked, bad) = compare_table(ctx, &t);
    let a = ctx.value(&set("112;321"), 25);
    let b = ctx.value(&set("123;321"), 25);
    let pass = bad.is_empty() && a == 9421 && b == 190404;
    Outcome::check(
        pass,
        format!(
            "{} rows, {} sets, {checked} values, {} mismatches; c25{{112,321}}={a}, c25{{123,321}}={b} {:?}",
            t.rows.len(),
            t.sets().len(),
            bad.len(),
            bad.first()
        ),
    )
}

/// Compositions of `n` avoiding 111 and the permutation pattern `p`, counted by a search that
/// shares no code with the library.
fn brute_111(n: usize, p: [u8; 4]) -> u64 {
    fn ends_with(w: &[u8], p: &[u8; 4]) -> bool {
        let last = w.len() - 1;
        (0..last).any(|a| {
            (a + 1..last).any(|b| {
                (b + 1..last).any(|c| {
                    let s = [w[a], w[b], w[c], w[last]];
                    (0..4).all(|i| (0..4).all(|j| s[i].cmp(&s[j]) == p[i].cmp(&p[j])))
                })
            })
        })
    }
    fn go(w: &mut Vec<u8>, rem: usize, seen: &mut [u8; 64], p: &[u8; 4]) -> u64 {
        if rem == 0 {
            return 1;
        }
        let mut total = 0;
        for x in 1..=rem {
            if seen[x] == 2 {
                continue;
            }
            w.push(x as u8);
            if !ends_with(w, p) {
                seen[x] += 1;
                total += go(w, rem - x, seen, p);
                seen[x] -= 1;
            }
            w.pop();
        }
        total
    }
    go(&mut vec![], n, &mut [0; 64], &p)
}

/// The listed n=24 value for {111,1423} repeats the one for {111,2413}. The two series first
/// differ at n=19; the listed n=25 values agree with ours.
fn listed_111_1423_typo() -> bool {
    brute_111(19, [1, 4, 2, 3]) == 11935
        && brute_111(19, [2, 4, 1, 3]) == 11934
        && brute_111(24, [1, 4, 2, 3]) == 94679
        && brute_111(24, [2, 4, 1, 3]) == 94579
}

fn large_table(ctx: &mut Ctx) -> Outcome {
    let t = TableId::Appendix1.load().unwrap();
    let (checked, bad) = compare_table(ctx, &t);
    let ext: Vec<Count> = (24..=26).map(|n| ctx.value(&set("121;1342"), n)).collect();
    let pass = bad.is_empty()
        && ctx.value(&set("111;1212"), 24) == 104335
        && ctx.value(&set("213;1234"), 24) == 1019326
        && ext == [78034, 113633, 164728]
        && ctx.value(&set("121;1423"), 26) == 164727;
    let extended = t.rows.iter().filter(|r| r.values.len() > 1).count();
    let documented = bad == ["{111,1423} n=24: 94679 != 94579"] && listed_111_1423_typo();
    Outcome {
        pass,
        detail: format!(
            "{} rows, {} sets, {checked} values ({extended} rows listed past n=24), {} mismatches {:?}{}",
            t.rows.len(),
            t.sets().len(),
            bad.len(),
            bad,
            if documented { " (known discrepancy, see README)" } else { "" }
        ),
        known: Some(documented),
    }
}

fn multiset_separation(_: &mut Ctx) -> Outcome {
    let shape: MultisetShape = "2,2,2,2,2".parse().unwrap();
    let t = Instant::now();
    let a = count_multiset(&shape, &set("121;1342")).unwrap();
    let b = count_multiset(&shape, &set("121;3142")).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let pass = a == 46566 && b == 45969 && secs < 1.0;
    // With 121 forbidden, the two sets have equal counts on every shape checked (all shapes of
    // size <= 10). 46566 and 45969 are the counts for 1342 and 3142 alone.
    let single = (count_multiset(&shape, &set("1342")).unwrap(), count_multiset(&shape, &set("3142")).unwrap());
    let documented = a == 750 && b == 750 && single == (46566, 45969);
    Outcome {
        pass,
        detail: format!(
            "(2,2,2,2,2): {{121,1342}}={a}, {{121,3142}}={b} in {secs:.3}s, expected 46566/45969; \
             {{1342}}={}, {{3142}}={} (known discrepancy, see README)",
            single.0, single.1
        ),
        known: Some(documented),
    }
}

fn conjecture(_: &mut Ctx) -> Outcome {
    let r = check_conjecture(28).unwrap();
    let pass = r.all_equal() && r.n_max == 28;
    let pairs: Vec<String> = r.pairs.iter().map(|p| format!("{} = {} at n=28: {}", p.left.braced(), p.right.braced(), p.left_series[27])).collect();
    Outcome::check(pass, format!("equal for every n <= {}; {}", r.n_max, pairs.join("; ")))
}

fn succession(_: &mut Ctx) -> Outcome {
    let mut cases = 0;
    let mut bad = vec![];
    for rule in RuleId::ALL {
        let r = verify_rule(rule, 10).unwrap();
        cases += r.cases;
        if let Some((s, sh, x, y)) = r.mismatch {
            bad.push(format!("{rule} {s} ({sh}): {x} vs {y}"));
        }
    }
    let target = set("112;2212");
    let shapes = MultisetShape::all_up_to(10);
    let formula_bad = shapes
        .par_iter()
        .filter(|s| product_formula_112_2212(s).unwrap() != count_multiset(s, &target).unwrap())
        .count();
    let factorials = (1..=8).all(|k| {
        let s = MultisetShape::new(vec![1; k]).unwrap();
        product_formula_112_2212(&s).unwrap() == (1..=k as u64).product::<u64>()
    });
    Outcome::check(
        bad.is_empty() && formula_bad == 0 && factorials,
        format!(
            "{} rules, {cases} (set, shape) cases, {} mismatches {:?}; product formula on {} shapes: {formula_bad} mismatches; k! for k<=8: {factorials}",
            RuleId::ALL.len(),
            bad.len(),
            bad.first(),
            shapes.len()
        ),
    )
}

fn bijections(_: &mut Ctx) -> Outcome {
    let mut lines = vec![];
    let mut pass = true;
    for id in BijectionId::all() {
        let reports = verify_bijection_up_to(&id, 10).unwrap();
        let words: Count = reports.iter().map(|r| r.domain_size).sum();
        let fail = reports.iter().find(|r| !r.passed());
        pass &= fail.is_none();
        lines.push(match fail {
            None => format!("{} ok ({words} words)", id.name()),
            Some(r) => format!("{} FAILS at ({}): {:?}", id.name(), r.shape, r.counterexample),
        });
    }
    let rr = BijectionId::RunRearrange;
    let kept = [Statistic::LastLetter, Statistic::RightLeftMaximaValues];
    let stats_ok = MultisetShape::all_up_to(9).iter().all(|s| verify_bijection_with(&rr, s, &kept).unwrap().passed());
    pass &= stats_ok;
    // positions of right-left maxima cannot be preserved by any bijection here
    let pos = verify_bijection_with(&rr, &"1,2,1,1".parse().unwrap(), &[Statistic::RightLeftMaximaPositions]).unwrap();
    Outcome::check(
        pass,
        format!(
            "{}; run_rearrange_f keeps last letter and right-left maxima (size <= 9): {stats_ok}; \
             maxima positions kept on (1,2,1,1): {}",
            lines.join(", "),
            pos.passed()
        ),
    )
}

fn m(s: &str) -> BinaryMatrix {
    word_to_matrix(&s.parse().unwrap()).unwrap()
}

fn ms(s: &str) -> Vec<BinaryMatrix> {
    s.split(';').map(m).collect()
}

fn ferrers(_: &mut Ctx) -> Outcome {
    let mut notes = vec![];
    let mut pass = true;
    let mut strong = vec![("123", "321"), ("212", "122")];
    // 2^i 1 2^j against 1 2^(i+j)
    strong.extend([("21", "12"), ("221", "122"), ("2122", "1222"), ("2212", "1222"), ("2221", "1222")]);
    for (a, b) in strong {
        let ok = check_sf_equiv(&m(a), &m(b), 10).unwrap().holds;
        pass &= ok;
        notes.push(format!("sf({a},{b})@10={ok}"));
    }
    for (a, b) in [("231;221", "312;212"), ("231;121", "312;211")] {
        let ok = check_set_sf_equiv(&ms(a), &ms(b), 10).unwrap().holds;
        pass &= ok;
        notes.push(format!("sf({{{a}}},{{{b}}})@10={ok}"));
    }
    let ft = check_ft_equiv(&m("312"), &m("231"), 12).unwrap().holds;
    pass &= ft;
    notes.push(format!("ft(312,231)@12={ft}"));
    // no witness exists within 17 cells; the first one has 18
    let sf = check_sf_equiv(&m("312"), &m("231"), 18).unwrap();
    let w = sf.witness.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "none".into());
    pass &= !sf.holds && sf.witness.is_some();
    notes.push(format!("sf(312,231)@18 holds={} witness {w}", sf.holds));
    let sq = FerrersShape::rectangle(3, 3).unwrap();
    let a = count_avoiding_fillings(&sq, FillingClass::Transversal, &[m("312")], None, None).unwrap();
    let b = count_avoiding_fillings(&sq, FillingClass::Transversal, &[m("231")], None, None).unwrap();
    pass &= a == 5 && b == 5;
    notes.push(format!("3x3 transversal 312={a} 231={b}"));
    Outcome::check(pass, notes.join("; "))
}

fn canonical(class: &[PatternSet]) -> BTreeSet<PatternSet> {
    class.iter().map(PatternSet::reversal_canonical).collect()
}

fn canonical_classes<'a>(classes: impl IntoIterator<Item = &'a Vec<PatternSet>>) -> BTreeSet<BTreeSet<PatternSet>> {
    classes.into_iter().filter(|c| c.len() > 1).map(|c| canonical(c)).collect()
}

fn classes(ctx: &mut Ctx) -> Outcome {
    // the listed classes, each with its image under complementation
    let listed: [&[&str]; 5] = [
        &["111;123", "111;132", "111;213"],
        &["111;112", "111;121"],
        &["112;123", "112;213", "121;132"],
        &["112;212", "121;122"],
        &["121;123", "121;213"],
    ];
    let mut expected = BTreeSet::new();
    for c in listed {
        let sets: Vec<PatternSet> = c.iter().map(|s| set(s)).collect();
        let comp: Vec<PatternSet> = sets.iter().map(PatternSet::complement).collect();
        expected.insert(canonical(&sets));
        expected.insert(canonical(&comp));
    }
    let r3 = group_m_equiv(&family_3x3(), 10).unwrap();
    let found3 = canonical_classes(&r3.classes);
    let multi: Vec<Vec<PatternSet>> = r3.classes.iter().filter(|c| c.len() > 1).cloned().collect();
    let folded = fold_complements(&multi).len();
    let ok3 = found3 == expected && folded == 5;

    let t = TableId::Appendix1.load().unwrap();
    ctx.ensure(&table_jobs(&t));
    let sets: Vec<PatternSet> = t.sets().into_iter().cloned().collect();
    let series: Vec<Vec<Count>> = sets.iter().map(|s| ctx.series[s].clone()).collect();
    let r4 = group_series(&sets, &series).unwrap();
    let found4 = canonical_classes(&r4.classes);
    let table = TableId::Table1Classes.load().unwrap();
    let want4: BTreeSet<BTreeSet<PatternSet>> = table.rows.iter().map(|r| canonical(&r.sets)).collect();
    let ok4 = found4 == want4;

    let find = |s: &str| {
        let key = set(s).reversal_canonical();
        sets.iter().position(|x| x.reversal_canonical() == key).map(|i| r4.class_of(&sets[i]).unwrap())
    };
    let mut seps = vec![];
    let mut ok_sep = true;
    let mut at = vec![];
    for (a, b, n) in [("111;2413", "111;1423", 25), ("121;1423", "121;1342", 26), ("121;1323", "121;2313", 29)] {
        let w = match (find(a), find(b)) {
            (Some(x), Some(y)) if x != y => r4.separation(x, y).cloned(),
            _ => None,
        };
        let k = match w {
            Some(Witness::N { n, .. }) => Some(n),
            _ => None,
        };
        ok_sep &= k == Some(n);
        at.push(k);
        seps.push(format!("{{{a}}}/{{{b}}}: {} (listed n={n})", w.map_or("none".into(), |w| w.to_string())));
    }
    let documented = ok3 && ok4 && at == [Some(19), Some(26), Some(29)] && listed_111_1423_typo();
    Outcome {
        pass: ok3 && ok4 && ok_sep,
        known: Some(documented),
        detail: format!(
            "3x3 multiset classes: {} non-singleton ({folded} up to complement), match: {ok3}; \
             3x4 composition classes: {} non-singleton of {}, match: {ok4}; separations: {}{}",
            found3.len(),
            found4.len(),
            want4.len(),
            seps.join(", "),
            if documented && !ok_sep { " (known discrepancy, see README)" } else { "" }
        ),
    }
}

fn properties(_: &mut Ctx) -> Outcome {
    use common::*;
    let cfg = |cases| Config { cases, failure_persistence: None, ..Config::default() };
    let mut errors = vec![];
    let mut note = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            errors.push(format!("{name}: {e}"));
        }
    };
    note(
        "containment",
        TestRunner::new(cfg(20000))
            .run(&(word_strategy(10, 6), pattern_strategy(5)), |(w, p)| check_containment(&w, &p))
            .map_err(|e| e.to_string()),
    );
    note(
        "symmetries",
        TestRunner::new(cfg(1000))
            .run(&(set_strategy(), shape_strategy(4, 3)), |(s, sh)| check_symmetries(&s, &sh))
            .map_err(|e| e.to_string()),
    );
    note(
        "composition reversal",
        TestRunner::new(cfg(1000))
            .run(&(set_strategy(), 1usize..=14), |(s, n)| check_composition_reversal(&s, n))
            .map_err(|e| e.to_string()),
    );
    note(
        "decomposition",
        TestRunner::new(cfg(1000)).run(&set_strategy(), |s| check_decomposition(&s, 14)).map_err(|e| e.to_string()),
    );
    note(
        "incremental checker",
        TestRunner::new(cfg(5000))
            .run(&(set_strategy(), ops_strategy(6)), |(s, ops)| check_incremental(&s, &ops, 6))
            .map_err(|e| e.to_string()),
    );
    Outcome::check(errors.is_empty(), if errors.is_empty() { "5 suites".to_string() } else { errors.join("; ") })
}

type Criterion = fn(&mut Ctx) -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("small-table reproduction (n=25)", small_table),
        ("large-table reproduction (n=24 and extensions)", large_table),
        ("multiset counterexample on (2,2,2,2,2)", multiset_separation),
        ("equal composition series to n=28", conjecture),
        ("succession rules against direct counting", succession),
        ("bijection certification", bijections),
        ("Ferrers filling equivalences", ferrers),
        ("classification tables", classes),
        ("property suites", properties),
    ];
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut ctx = Ctx::default();
    let mut ok = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        if only.as_ref().is_some_and(|o| !o.contains(&k)) {
            continue;
        }
        let t = Instant::now();
        let o = f(&mut ctx);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {k} {status} [{:.1}s] {name}: {}", t.elapsed().as_secs_f64(), o.detail);
        ok &= o.pass || o.known == Some(true);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
