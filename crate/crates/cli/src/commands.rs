use std::collections::BTreeSet;
use std::time::Instant;

use mpav::bijections::{verify_bijection_up_to, BijectionId};
use mpav::classify::{
    family_3x3, family_3x4, fold_complements, group_m_equiv, group_wilf_compositions,
    group_wilf_compositions_refined, group_wilf_compositions_to, verify_statement, check_conjecture, ClassReport,
    Witness, STATEMENTS,
};
use mpav::ferrers::{
    check_ft_equiv, check_set_sf_equiv, sparse_transversal_consistency, EquivalenceCheck,
};
use mpav::golden::{GoldenTable, TableId};
use mpav::succession::{verify_rule, RuleId};
use mpav::{composition_series, count_compositions, count_multiset, word_to_matrix, BinaryMatrix, Error, MultisetShape};
use mpav::{PatternSet, Result, Word};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{counts, joined, Report};
use crate::{ClassifyArgs, ConjectureArgs, CountArgs, Family, FerrersArgs, Mode, ReproduceArgs, VerifyArgs};

pub fn count(a: &CountArgs) -> Result<Report> {
    let set: PatternSet = a.patterns.parse()?;
    let t = Instant::now();
    let (mode, input, c) = match (&a.n, &a.multiset) {
        (Some(n), None) => ("composition", n.to_string(), count_compositions(*n, &set)?),
        (None, Some(m)) => {
            let shape: MultisetShape = m.parse()?;
            ("multiset", shape.to_string(), count_multiset(&shape, &set)?)
        }
        _ => return Err(Error::Invalid("exactly one of --n and --multiset is required".into())),
    };
    let ms = t.elapsed().as_millis().to_string();
    let json = json!({
        "patterns": set.to_string(),
        "mode": mode,
        "input": input,
        "count": c.to_string(),
        "elapsed_ms": ms,
    });
    let row = vec![set.to_string(), mode.into(), input, c.to_string(), ms];
    Ok(Report::new(json, true).with_rows(vec!["patterns", "mode", "input", "count", "elapsed_ms"], vec![row]))
}

pub fn reproduce(a: &ReproduceArgs) -> Result<Report> {
    let id: TableId = a.table.parse()?;
    match id {
        TableId::Table1Classes => reproduce_classes(a.filter.as_deref()),
        _ => reproduce_values(&id.load()?, a.filter.as_deref()),
    }
}

fn reproduce_values(table: &GoldenTable, filter: Option<&str>) -> Result<Report> {
    let start = table.start();
    let rows = table.filtered(filter);
    let jobs: Vec<(usize, &PatternSet)> =
        rows.iter().enumerate().flat_map(|(i, r)| r.sets.iter().map(move |s| (i, s))).collect();
    let computed: Vec<Vec<u64>> = jobs
        .par_iter()
        .map(|&(i, s)| {
            let last = start + rows[i].values.len() - 1;
            Ok(composition_series(last, s)?.counts()[start - 1..].to_vec())
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut records = Vec::new();
    let mut failed = 0;
    for ((i, s), got) in jobs.iter().zip(&computed) {
        let want = &rows[*i].values;
        let pass = got == want;
        failed += usize::from(!pass);
        let status = if pass { "PASS" } else { "FAIL" };
        eprintln!("{status} {} n={}..{} computed {} expected {}", s.braced(), start, start + want.len() - 1, joined(got), joined(want));
        out.push(json!({
            "row": i + 1,
            "set": s.to_string(),
            "n_start": start,
            "expected": counts(want),
            "computed": counts(got),
            "status": status,
        }));
        records.push(vec![(i + 1).to_string(), s.to_string(), start.to_string(), joined(want), joined(got), status.into()]);
    }
    let json = json!({
        "table": table.id.name(),
        "rows": out,
        "checked": jobs.len(),
        "failed": failed,
    });
    Ok(Report::new(json, failed == 0)
        .with_rows(vec!["row", "set", "n_start", "expected", "computed", "status"], records))
}

fn canonical(class: &[PatternSet]) -> BTreeSet<PatternSet> {
    class.iter().map(PatternSet::reversal_canonical).collect()
}

fn reproduce_classes(filter: Option<&str>) -> Result<Report> {
    let values = TableId::Appendix1.load()?;
    let classes = TableId::Table1Classes.load()?;
    let start = values.start();
    let mut sets = Vec::new();
    let mut extents = Vec::new();
    for r in &values.rows {
        for s in &r.sets {
            sets.push(s.clone());
            extents.push(start + r.values.len() - 1);
        }
    }
    let report = group_wilf_compositions_to(&sets, start, &extents)?;
    let found: Vec<BTreeSet<PatternSet>> = report.non_singleton().iter().map(|c| canonical(c)).collect();
    let expected: Vec<BTreeSet<PatternSet>> = classes.rows.iter().map(|r| canonical(&r.sets)).collect();
    let keep = |c: &BTreeSet<PatternSet>| {
        let sets: Vec<PatternSet> = c.iter().cloned().collect();
        filter.map_or(true, |f| mpav::golden::GoldenRow { sets, values: vec![] }.matches(f))
    };
    let mut out = Vec::new();
    let mut records = Vec::new();
    let mut failed = 0;
    let mut push = |class: &BTreeSet<PatternSet>, status: &str, note: &str| {
        let names: Vec<String> = class.iter().map(|s| s.to_string()).collect();
        eprintln!("{status} {} {note}", names.join(" | "));
        out.push(json!({ "class": names, "status": status, "note": note }));
        records.push(vec![names.join(" | "), status.to_string(), note.to_string()]);
    };
    for c in expected.iter().filter(|c| keep(c)) {
        if found.contains(c) {
            push(c, "PASS", "");
        } else {
            failed += 1;
            push(c, "FAIL", "not found");
        }
    }
    for c in found.iter().filter(|c| keep(c) && !expected.contains(c)) {
        failed += 1;
        push(c, "FAIL", "unexpected class");
    }
    let json = json!({
        "table": TableId::Table1Classes.name(),
        "bound": report.bound.to_string(),
        "classes": out,
        "failed": failed,
    });
    Ok(Report::new(json, failed == 0).with_rows(vec!["class", "status", "note"], records))
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Shape { shape, left, right } => {
            json!({ "shape": shape.to_string(), "left": left.to_string(), "right": right.to_string() })
        }
        Witness::N { n, left, right } => json!({ "n": n, "left": left.to_string(), "right": right.to_string() }),
    }
}

fn witness_rank(w: &Witness) -> (usize, usize) {
    match w {
        Witness::Shape { shape, .. } => (shape.size(), shape.height()),
        Witness::N { n, .. } => (*n, 0),
    }
}

fn names(c: &[PatternSet]) -> Vec<String> {
    c.iter().map(|s| s.to_string()).collect()
}

pub fn classify(a: &ClassifyArgs) -> Result<Report> {
    let sets = match a.family {
        Family::F3x3 => family_3x3(),
        Family::F3x4 => family_3x4(),
    };
    let report: ClassReport = match (a.mode, a.extend) {
        (Mode::Multiset, None) => group_m_equiv(&sets, a.bound)?,
        (Mode::Multiset, Some(_)) => return Err(Error::Invalid("--extend applies to composition mode".into())),
        (Mode::Composition, None) => group_wilf_compositions(&sets, a.bound)?,
        (Mode::Composition, Some(e)) => group_wilf_compositions_refined(&sets, a.bound, e)?,
    };
    let mut classes = Vec::new();
    let mut records = Vec::new();
    for (i, c) in report.classes.iter().enumerate().filter(|(_, c)| c.len() > 1) {
        // the separation found latest is the most informative one
        let closest = report
            .separations
            .iter()
            .filter(|s| s.classes.0 == i || s.classes.1 == i)
            .max_by_key(|s| witness_rank(&s.witness))
            .map(|s| {
                let other = if s.classes.0 == i { s.classes.1 } else { s.classes.0 };
                json!({ "class": names(&report.classes[other]), "witness": witness_json(&s.witness) })
            });
        classes.push(json!({ "members": names(c), "closest": closest }));
        records.push(vec![(classes.len()).to_string(), names(c).join(" | ")]);
    }
    let mut json = json!({
        "family": match a.family { Family::F3x3 => "3x3", Family::F3x4 => "3x4" },
        "bound": report.bound.to_string(),
        "sets": sets.len(),
        "classes": report.classes.len(),
        "non_singleton": classes,
    });
    if a.fold_complements {
        // singletons would pair up with their complements, so only real classes are folded
        let multi: Vec<Vec<PatternSet>> = report.classes.iter().filter(|c| c.len() > 1).cloned().collect();
        let folded: Vec<Vec<String>> = fold_complements(&multi).iter().map(|c| names(c)).collect();
        json["folded"] = json!(folded);
    }
    Ok(Report::new(json, true).with_rows(vec!["class", "members"], records))
}

pub fn verify(a: &VerifyArgs) -> Result<Report> {
    let all = |s: &str| s.eq_ignore_ascii_case("all");
    let mut items = Vec::new();
    let mut records = Vec::new();
    let mut ok = true;
    if let Some(b) = &a.bijection {
        let ids = if all(b) { BijectionId::all() } else { vec![b.parse()?] };
        for id in ids {
            let reports = verify_bijection_up_to(&id, a.max_size)?;
            let failure = reports.iter().find(|r| !r.passed());
            let passed = failure.is_none();
            ok &= passed;
            let domain: u64 = reports.iter().map(|r| r.domain_size).sum();
            let stats: Vec<&str> = id.statistics().iter().map(|s| s.name()).collect();
            let failure = failure.map(|r| {
                json!({
                    "shape": r.shape.to_string(),
                    "domain_size": r.domain_size.to_string(),
                    "codomain_size": r.codomain_size.to_string(),
                    "injective": r.injective,
                    "codomain_ok": r.codomain_ok,
                    "statistics": r.statistics.iter().map(|(s, k)| json!({ "name": s.name(), "preserved": k })).collect::<Vec<_>>(),
                    "counterexample": r.counterexample.as_ref().map(|c| json!({
                        "word": c.word.to_string(), "image": c.image.to_string(), "reason": c.reason,
                    })),
                })
            });
            items.push(json!({
                "bijection": id.name(),
                "max_size": a.max_size,
                "shapes": reports.len(),
                "words": domain.to_string(),
                "statistics": stats,
                "passed": passed,
                "failure": failure,
            }));
            records.push(vec![id.name(), a.max_size.to_string(), domain.to_string(), pass_str(passed)]);
        }
    } else if let Some(r) = &a.rule {
        let ids = if all(r) { RuleId::ALL.to_vec() } else { vec![r.parse()?] };
        for id in ids {
            let rep = verify_rule(id, a.max_size)?;
            ok &= rep.passed();
            let mismatch = rep.mismatch.as_ref().map(|(set, shape, x, y)| {
                json!({ "set": set.to_string(), "shape": shape.to_string(), "rule": x.to_string(), "direct": y.to_string() })
            });
            items.push(json!({
                "rule": id.name(),
                "max_size": a.max_size,
                "cases": rep.cases,
                "passed": rep.passed(),
                "mismatch": mismatch,
            }));
            records.push(vec![id.name().to_string(), a.max_size.to_string(), rep.cases.to_string(), pass_str(rep.passed())]);
        }
    } else if let Some(s) = &a.statement {
        let ids: Vec<String> = if all(s) { STATEMENTS.iter().map(|s| s.to_string()).collect() } else { vec![s.clone()] };
        for id in ids {
            let rep = verify_statement(&id, a.max_size, a.r)?;
            ok &= rep.holds;
            let groups: Vec<Vec<String>> = rep.groups.iter().map(|g| names(g)).collect();
            let witness = rep.witness.as_ref().map(|(l, r, w)| {
                json!({ "left": l.to_string(), "right": r.to_string(), "at": witness_json(w) })
            });
            items.push(json!({
                "statement": rep.id,
                "max_size": rep.max_size,
                "r": rep.r,
                "groups": groups,
                "holds": rep.holds,
                "witness": witness,
            }));
            records.push(vec![rep.id.clone(), rep.max_size.to_string(), String::new(), pass_str(rep.holds)]);
        }
    }
    let json = json!({ "results": items, "passed": ok });
    Ok(Report::new(json, ok).with_rows(vec!["id", "max_size", "cases", "status"], records))
}

fn pass_str(b: bool) -> String {
    if b { "PASS" } else { "FAIL" }.to_string()
}

pub fn conjecture(a: &ConjectureArgs) -> Result<Report> {
    let rep = check_conjecture(a.n_max)?;
    let mut pairs = Vec::new();
    let mut records = Vec::new();
    for p in &rep.pairs {
        pairs.push(json!({
            "left": p.left.to_string(),
            "right": p.right.to_string(),
            "equal": p.first_difference.is_none(),
            "first_difference": p.first_difference,
            "left_series": counts(&p.left_series),
            "right_series": counts(&p.right_series),
        }));
        for (i, (x, y)) in p.left_series.iter().zip(&p.right_series).enumerate() {
            records.push(vec![p.left.to_string(), p.right.to_string(), (i + 1).to_string(), x.to_string(), y.to_string()]);
        }
    }
    let json = json!({
        "n_max": rep.n_max,
        "pairs": pairs,
        "all_equal": rep.all_equal(),
        "multiset_shape": rep.multiset_shape.to_string(),
        "multiset_counts": [rep.multiset_counts.0.to_string(), rep.multiset_counts.1.to_string()],
    });
    Ok(Report::new(json, rep.all_equal()).with_rows(vec!["left", "right", "n", "left_count", "right_count"], records))
}

enum FerrersKind {
    Strong,
    Transversal,
    Sparse,
}

struct FerrersCase {
    kind: FerrersKind,
    left: Vec<Word>,
    right: Vec<Word>,
}

fn words(s: &str) -> Result<Vec<Word>> {
    s.split(';').map(|w| w.trim().parse()).collect()
}

fn ferrers_cases(check: &str) -> Result<Vec<FerrersCase>> {
    let case = |kind, l: &str, r: &str| -> Result<FerrersCase> { Ok(FerrersCase { kind, left: words(l)?, right: words(r)? }) };
    let named = match check {
        "sf-123-321" => vec![case(FerrersKind::Strong, "123", "321")?],
        "sf-312-231" => vec![case(FerrersKind::Strong, "312", "231")?],
        "sf-212-122" => vec![case(FerrersKind::Strong, "212", "122")?],
        "sf-2i12j" => {
            // 2^i 1 2^j against 1 2^(i+j)
            let mut v = Vec::new();
            for total in 1..=3 {
                let target = format!("1{}", "2".repeat(total));
                for i in 1..=total {
                    let w = format!("{}1{}", "2".repeat(i), "2".repeat(total - i));
                    v.push(case(FerrersKind::Strong, &w, &target)?);
                }
            }
            v
        }
        "sf-sets-221" => vec![case(FerrersKind::Strong, "231;221", "312;212")?],
        "sf-sets-121" => vec![case(FerrersKind::Strong, "231;121", "312;211")?],
        "ft-312-231" => vec![case(FerrersKind::Transversal, "312", "231")?],
        "ft-12-21" => vec![case(FerrersKind::Transversal, "12", "21")?],
        "sparse-312-231" => vec![case(FerrersKind::Sparse, "312", "231")?],
        "sparse-12-21" => vec![case(FerrersKind::Sparse, "12", "21")?],
        _ => {
            let parts: Vec<&str> = check.split(':').collect();
            let kind = match parts.as_slice() {
                ["sf" | "setsf", _, _] => FerrersKind::Strong,
                ["ft", _, _] => FerrersKind::Transversal,
                ["sparse", _, _] => FerrersKind::Sparse,
                _ => return Err(Error::UnknownId(format!("{check} (named checks: {})", FERRERS_CHECKS.join(", ")))),
            };
            let c = case(kind, parts[1], parts[2])?;
            if parts[0] != "setsf" && (c.left.len() != 1 || c.right.len() != 1) {
                return Err(Error::Invalid(format!("{} takes single patterns; use setsf", parts[0])));
            }
            vec![c]
        }
    };
    Ok(named)
}

/// Named checks accepted by `ferrers --check`.
pub const FERRERS_CHECKS: &[&str] = &[
    "sf-123-321", "sf-312-231", "sf-212-122", "sf-2i12j", "sf-sets-221", "sf-sets-121", "ft-312-231", "ft-12-21",
    "sparse-312-231", "sparse-12-21",
];

pub fn ferrers(a: &FerrersArgs) -> Result<Report> {
    let cases = ferrers_cases(a.check.trim())?;
    let mut items = Vec::new();
    let mut records = Vec::new();
    let mut ok = true;
    for c in cases {
        let to_m = |ws: &[Word]| ws.iter().map(word_to_matrix).collect::<Result<Vec<BinaryMatrix>>>();
        let (l, r) = (to_m(&c.left)?, to_m(&c.right)?);
        let (kind, res): (&str, EquivalenceCheck) = match c.kind {
            FerrersKind::Strong => ("strong", check_set_sf_equiv(&l, &r, a.max_cells)?),
            FerrersKind::Transversal => {
                single(&l, &r)?;
                ("transversal", check_ft_equiv(&l[0], &r[0], a.max_cells)?)
            }
            FerrersKind::Sparse => {
                single(&l, &r)?;
                ("sparse", sparse_transversal_consistency(&l[0], &r[0], a.max_cells)?)
            }
        };
        ok &= res.holds;
        let join = |ws: &[Word]| ws.iter().map(Word::to_string).collect::<Vec<_>>().join(";");
        let witness = res.witness.as_ref().map(|w| {
            json!({
                "shape": w.shape.to_string(),
                "profile": w.profile.as_ref().map(|p| p.to_string()),
                "left": w.left.to_string(),
                "right": w.right.to_string(),
            })
        });
        items.push(json!({
            "kind": kind,
            "left": join(&c.left),
            "right": join(&c.right),
            "max_cells": res.max_cells,
            "shapes_checked": res.shapes_checked,
            "holds": res.holds,
            "witness": witness,
        }));
        let wtxt = res.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        records.push(vec![kind.into(), join(&c.left), join(&c.right), res.max_cells.to_string(), pass_str(res.holds), wtxt]);
    }
    let json = json!({ "check": a.check, "results": items, "passed": ok });
    Ok(Report::new(json, ok).with_rows(vec!["kind", "left", "right", "max_cells", "status", "witness"], records))
}

fn single(l: &[BinaryMatrix], r: &[BinaryMatrix]) -> Result<()> {
    if l.len() != 1 || r.len() != 1 {
        return Err(Error::Invalid("this check takes single patterns".into()));
    }
    Ok(())
}
