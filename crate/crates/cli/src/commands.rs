//! The subcommands, each turning its arguments into a [`Report`].

use anyhow::{Context, Result};
use pathring_core::algebra::AlgebraSignature;
use pathring_core::generators::{check_golden, generator_table, shipped_golden, GeneratorTable};
use pathring_core::geometry::{
    concat_check, critical_index, expected_index, halfcircle_check, yk_check, GeometryReport, Tolerances,
};
use pathring_core::homology::{
    assemble_pn_homology, st_rpn_homology, CoefficientSystem, Coefficients, GradedGroupTable,
};
use pathring_core::report::{all_passed, CheckItem};
use pathring_core::rewrite::{
    anti_automorphism_check, compare, derived_relation_checks, filtration_check, heredity_check, hilbert,
    repair_search, standard_system, AugmentationOutcome, DiscrepancyReport, RejectReason,
};
use serde_json::{json, Value};

use crate::render::{Report, Section};

fn table_json(t: &GradedGroupTable) -> Result<Value> {
    let mut v = serde_json::to_value(t)?;
    for cell in v["cells"].as_array_mut().into_iter().flatten() {
        cell["names"] = json!([]);
    }
    Ok(v)
}

fn table_section(t: &GradedGroupTable) -> Section {
    let mut s = Section::new(format!("H({}; {})", t.label, t.coefficients), &["degree", "level", "value"]);
    for (d, level, e) in t.iter() {
        s.row([d.to_string(), level.map_or_else(|| "-".to_string(), |l| l.to_string()), e.to_string()]);
    }
    s
}

/// Homology of P_n and of the unit tangent bundle of RP^n.
pub fn homology(n: u32, integral: bool, max_degree: i64) -> Result<Report> {
    let tables = if integral {
        vec![
            assemble_pn_homology(n, Coefficients::Integral, max_degree)?,
            st_rpn_homology(n, CoefficientSystem::ZTrivial)?,
            st_rpn_homology(n, CoefficientSystem::ZPullbackO)?,
        ]
    } else {
        vec![assemble_pn_homology(n, Coefficients::F2, max_degree)?, st_rpn_homology(n, CoefficientSystem::F2)?]
    };
    let json_tables = tables.iter().map(table_json).collect::<Result<Vec<_>>>()?;
    let mut labelled = tables.clone();
    for t in labelled.iter_mut().skip(1) {
        t.label = format!("ST RP^{n}");
    }
    Ok(Report {
        json: json!({ "n": n, "max_degree": max_degree, "tables": json_tables }),
        sections: labelled.iter().map(table_section).collect(),
        passed: true,
    })
}

fn check_rows(title: &str, items: &[CheckItem]) -> Section {
    let mut s = Section::new(title, &["check", "result", "detail"]);
    for i in items {
        s.row([i.name.as_str(), if i.passed { "pass" } else { "FAIL" }, i.detail.as_str()]);
    }
    s
}

fn discrepancy_sections(d: &DiscrepancyReport) -> Vec<Section> {
    let mut cells = Section::new("differing cells", &["degree", "level", "algebra", "homology"]);
    for c in &d.cells {
        cells.row([c.degree.to_string(), c.level.to_string(), c.algebra.to_string(), c.homology.to_string()]);
    }
    let mut totals = Section::new("differing degree totals", &["degree", "algebra", "homology"]);
    for t in &d.totals {
        totals.row([t.degree.to_string(), t.algebra.to_string(), t.homology.to_string()]);
    }
    vec![cells, totals]
}

fn rules_of(o: &AugmentationOutcome) -> Vec<String> {
    o.rules.iter().map(|r| r.to_string()).collect()
}

fn chosen_of(o: &AugmentationOutcome) -> Vec<String> {
    o.chosen.iter().map(|r| r.to_string()).collect()
}

fn reason(r: &RejectReason) -> &'static str {
    match r {
        RejectReason::Completion { .. } => "completion failed",
        RejectReason::Filtration { .. } => "breaks the level filtration",
        RejectReason::Deficit { .. } => "collapses classes",
        RejectReason::Mismatch { .. } => "Hilbert function mismatch",
        RejectReason::DepthLimit => "depth limit",
    }
}

/// Presentation against homology, plus the structural suites; for even `n`
/// with a discrepancy the repair search is appended.
pub fn verify(n: u32, max_degree: i64) -> Result<Report> {
    let rs = standard_system(n, max_degree)?;
    let homology = assemble_pn_homology(n, Coefficients::F2, max_degree)?.to_dim_table();
    let diff = compare(&hilbert(&rs, max_degree)?, &homology)?;

    let mut items = vec![CheckItem::new(
        "Hilbert function equals homology",
        diff.is_empty(),
        match diff.first_total_discrepancy() {
            None => format!("degrees 0..={max_degree}"),
            Some(t) => format!("first differing total at degree {}: {} vs {}", t.degree, t.algebra, t.homology),
        },
    )];
    let filtration = filtration_check(&rs);
    items.push(CheckItem::new(
        "rules preserve the level filtration",
        filtration.passed(),
        format!("{} rules, {} violations", filtration.rules_checked, filtration.violations.len()),
    ));
    items.extend(anti_automorphism_check(rs.signature(), &rs)?);
    items.extend(derived_relation_checks(&rs)?);
    let heredity = heredity_check(n)?;
    items.extend(heredity.items.iter().cloned());

    let mut sections = vec![check_rows(&format!("verification for n = {n}"), &items)];
    let mut json = json!({
        "n": n,
        "max_degree": max_degree,
        "checks": items,
        "discrepancy": diff,
    });
    if !diff.is_empty() {
        sections.extend(discrepancy_sections(&diff));
    }
    if !diff.is_empty() && n % 2 == 0 {
        let sig = AlgebraSignature::new(n)?;
        let repairs = repair_search(&sig, &homology, max_degree)?;
        let mut surplus = Section::new("surplus normal words", &["degree", "level", "words"]);
        for (c, words) in &repairs.surplus {
            let words: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            surplus.row([c.degree.to_string(), c.level.to_string(), words.join(" ")]);
        }
        let mut found = Section::new("repairs", &["status", "chosen", "after completion", "chosen rules confluent"]);
        for o in repairs.survivors.iter().chain(&repairs.rejected) {
            let status = o.rejection.as_ref().map_or("survives", reason);
            found.row([status.to_string(), chosen_of(o).join("; "), rules_of(o).join("; "), o.locally_confluent.to_string()]);
        }
        sections.push(surplus);
        sections.push(found);
        json["repairs"] = json!({
            "survivors": repairs.survivors.iter().map(|o| json!({
                "rules": rules_of(o),
                "chosen": chosen_of(o),
                "locally_confluent": o.locally_confluent,
            })).collect::<Vec<_>>(),
            "rejected": repairs.rejected.iter().map(|o| json!({
                "chosen": chosen_of(o),
                "reason": o.rejection.as_ref().map(reason),
            })).collect::<Vec<_>>(),
            "unrepairable_at": repairs.unrepairable_at,
        });
    }
    Ok(Report { json, sections, passed: diff.is_empty() && all_passed(&items) })
}

fn geometry_report(r: GeometryReport) -> Result<Report> {
    let mut s = Section::new(format!("{} (seed {})", r.name, r.seed), &["check", "trials", "worst", "bound", "result"]);
    for c in &r.checks {
        s.row([
            c.name.clone(),
            c.trials.to_string(),
            format!("{:.3e}", c.worst),
            format!("{:.0e}", c.bound),
            if c.passed { "pass".into() } else { "FAIL".into() },
        ]);
    }
    Ok(Report { json: serde_json::to_value(&r)?, sections: vec![s], passed: r.passed() })
}

pub fn geom_index(n: usize, k: usize, segments: usize, tol: &Tolerances) -> Result<Report> {
    let r = critical_index(n, k, segments, tol)?;
    let expected = expected_index(n, k);
    let mut s = Section::new(
        format!("critical geodesic n = {n}, k = {k}, {segments} segments"),
        &["quantity", "value", "expected"],
    );
    s.row(["index".to_string(), r.index.to_string(), expected.0.to_string()]);
    s.row(["nullity".to_string(), r.nullity.to_string(), expected.1.to_string()]);
    s.row(["gradient norm".to_string(), format!("{:.3e}", r.gradient_norm), format!("< {:.0e}", tol.grad_tol)]);
    s.row(["spectral radius".to_string(), format!("{:.4}", r.scale), String::new()]);
    s.row(["smallest non-null |eigenvalue|".to_string(), format!("{:.4e}", r.gap), String::new()]);
    let mut json = serde_json::to_value(&r)?;
    json["expected"] = json!({ "index": expected.0, "nullity": expected.1 });
    json["tolerances"] = serde_json::to_value(tol)?;
    Ok(Report { json, sections: vec![s], passed: r.matches_expected() })
}

pub fn geom_concat(trials: usize, seed: u64) -> Result<Report> {
    geometry_report(concat_check(trials, seed)?)
}

pub fn geom_halfcircle(n: usize, trials: usize, seed: u64) -> Result<Report> {
    geometry_report(halfcircle_check(n, trials, seed)?)
}

pub fn geom_yk(n: usize, k: usize, trials: usize, seed: u64) -> Result<Report> {
    geometry_report(yk_check(n, k, trials, seed)?)
}

fn generator_report(t: &GeneratorTable, title: String) -> Result<(Value, Section)> {
    let mut s = Section::new(title, &["degree", "level", "dim", "names"]);
    let cells: Vec<Value> = t
        .cells
        .iter()
        .map(|c| {
            s.row([c.degree.to_string(), c.level.to_string(), c.names.len().to_string(), c.names.join(", ")]);
            json!({ "degree": c.degree, "level": c.level, "names": c.names, "dim": c.names.len() })
        })
        .collect();
    Ok((json!({ "n": t.n, "levels": t.levels, "cells": cells }), s))
}

/// Named generators of the first `levels` level columns, optionally compared
/// with the shipped transcription.
pub fn table(n: u32, levels: Option<u32>, golden: bool) -> Result<Report> {
    let levels = match (levels, golden) {
        (Some(l), _) => l,
        (None, true) => shipped_golden(n)?.levels,
        (None, false) => 3,
    };
    let t = generator_table(n, levels);
    let (mut json, table_section) = generator_report(&t, format!("generators for n = {n}, levels 0..{levels}"))?;
    let mut sections = vec![table_section];
    let mut passed = true;
    if golden {
        let diffs = check_golden(n, levels).context("golden comparison")?;
        passed = diffs.is_empty();
        let mut s = Section::new("golden comparison", &["degree", "level", "computed", "golden"]);
        for d in &diffs {
            s.row([d.degree.to_string(), d.level.to_string(), d.computed.join(", "), d.golden.join(", ")]);
        }
        if passed {
            s.row(["-", "-", "all cells agree", "all cells agree"]);
        }
        sections.push(s);
        json["golden"] = json!({ "passed": passed, "mismatches": diffs });
    }
    Ok(Report { json, sections, passed })
}
