//! Search for extra relations that make a presentation's Hilbert function
//! agree with a homology table.
//!
//! Candidates for a surplus basis word `w` are rules `w -> r` where `r` is any
//! F2-combination of smaller basis words of the same degree and level at most
//! `level(w)`. Each candidate is completed, filtered, and the search recurses
//! on whatever surplus remains.

use std::cmp::Ordering;

use serde::Serialize;

use super::{
    compare, complete, critical_pair_residues, filtration_check, hilbert, irreducible_basis, orient, surplus_words,
    CellDiff, DiscrepancyReport, MonomialOrder, RewriteError, RewriteRule, RewriteSystem,
};
use crate::algebra::{AlgebraSignature, Polynomial, Word};
use crate::table::BigradedDimTable;

const MAX_DEPTH: usize = 6;
const MAX_CANDIDATE_WORDS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RejectReason {
    Completion { message: String },
    Filtration { violations: Vec<RewriteRule> },
    Deficit { report: DiscrepancyReport },
    Mismatch { report: DiscrepancyReport },
    DepthLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AugmentationOutcome {
    /// Rules picked by the search or the caller.
    pub chosen: Vec<RewriteRule>,
    /// Rules of the completed system that are not in the literal presentation.
    pub rules: Vec<RewriteRule>,
    /// Whether literal + chosen rules already resolve every critical pair.
    pub locally_confluent: bool,
    pub rejection: Option<RejectReason>,
    #[serde(skip)]
    pub system: Option<RewriteSystem>,
}

impl AugmentationOutcome {
    pub fn survived(&self) -> bool {
        self.rejection.is_none()
    }

    /// Whether `rule` is part of this augmentation (chosen or forced).
    pub fn contains(&self, rule: &RewriteRule) -> bool {
        self.rules.contains(rule)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepairReport {
    pub initial: DiscrepancyReport,
    pub surplus: Vec<(CellDiff, Vec<Word>)>,
    pub survivors: Vec<AugmentationOutcome>,
    pub rejected: Vec<AugmentationOutcome>,
    pub unrepairable_at: Option<i64>,
}

fn added_rules(literal: &RewriteSystem, done: &RewriteSystem) -> Vec<RewriteRule> {
    done.rules().iter().filter(|r| !literal.rules().contains(r)).cloned().collect()
}

struct Search<'a> {
    literal: RewriteSystem,
    hom: &'a BigradedDimTable,
    degree_bound: i64,
    weight_bound: u64,
    survivors: Vec<AugmentationOutcome>,
    rejected: Vec<AugmentationOutcome>,
}

impl Search<'_> {
    fn outcome(&self, chosen: &[RewriteRule], system: Option<RewriteSystem>, rejection: Option<RejectReason>) -> Result<AugmentationOutcome, RewriteError> {
        let raw = self.literal.with_extra_rules(chosen)?;
        let locally_confluent = critical_pair_residues(&raw, self.weight_bound)?.is_empty();
        let rules = system.as_ref().map(|s| added_rules(&self.literal, s)).unwrap_or_else(|| chosen.to_vec());
        Ok(AugmentationOutcome { chosen: chosen.to_vec(), rules, locally_confluent, rejection, system })
    }

    fn reject(&mut self, chosen: &[RewriteRule], system: Option<RewriteSystem>, reason: RejectReason) -> Result<(), RewriteError> {
        let o = self.outcome(chosen, system, Some(reason))?;
        self.rejected.push(o);
        Ok(())
    }

    fn explore(&mut self, system: RewriteSystem, chosen: Vec<RewriteRule>) -> Result<(), RewriteError> {
        let basis = irreducible_basis(&system, self.degree_bound)?;
        let table = hilbert(&system, self.degree_bound)?;
        let report = compare(&table, self.hom)?;
        if report.has_deficit() {
            return self.reject(&chosen, Some(system), RejectReason::Deficit { report });
        }
        if report.is_empty() {
            let filtration = filtration_check(&system);
            if !filtration.passed() {
                return self.reject(&chosen, Some(system), RejectReason::Filtration { violations: filtration.violations });
            }
            let o = self.outcome(&chosen, Some(system), None)?;
            if !self.survivors.iter().any(|s| s.rules == o.rules) {
                self.survivors.push(o);
            }
            return Ok(());
        }
        if chosen.len() >= MAX_DEPTH {
            return self.reject(&chosen, Some(system), RejectReason::DepthLimit);
        }
        let surplus = surplus_words(&basis, &report);
        let (cell, words) = surplus
            .iter()
            .min_by_key(|(c, _)| (c.level, c.degree))
            .expect("non-empty report without deficit has a surplus cell");
        let lead = words[0].clone();
        let order = *system.order();
        let candidates: Vec<Word> = basis
            .iter()
            .filter(|((d, l), _)| *d == cell.degree && *l <= cell.level)
            .flat_map(|(_, ws)| ws.iter())
            .filter(|w| order.cmp(w, &lead) == Ordering::Less)
            .cloned()
            .collect();
        let m = candidates.len().min(MAX_CANDIDATE_WORDS);
        for mask in 0u32..(1 << m) {
            let rhs: Polynomial = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| candidates[i].clone()).collect();
            let rule = RewriteRule::new(lead.clone(), rhs);
            let mut next_chosen = chosen.clone();
            next_chosen.push(rule.clone());
            let raw = system.with_extra_rules(&[rule])?;
            let next = match complete(&raw, self.weight_bound) {
                Ok(s) => s,
                Err(e @ RewriteError::CompletionFailed { .. }) => {
                    self.reject(&next_chosen, None, RejectReason::Completion { message: e.to_string() })?;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let filtration = filtration_check(&next);
            if !filtration.passed() {
                self.reject(&next_chosen, Some(next), RejectReason::Filtration { violations: filtration.violations })?;
                continue;
            }
            self.explore(next, next_chosen)?;
        }
        Ok(())
    }
}

fn literal_system(sig: &AlgebraSignature, degree_bound: i64) -> Result<(RewriteSystem, u64), RewriteError> {
    let order = MonomialOrder::default_for(sig);
    let weight_bound = super::required_weight_bound(sig, &order, degree_bound);
    Ok((orient(sig, &order)?, weight_bound))
}

/// All confluent, filtration-compatible augmentations of the presentation for
/// `sig` whose Hilbert function equals `hom` up to `degree_bound`.
pub fn repair_search(sig: &AlgebraSignature, hom: &BigradedDimTable, degree_bound: i64) -> Result<RepairReport, RewriteError> {
    let (literal, weight_bound) = literal_system(sig, degree_bound)?;
    let start = complete(&literal, weight_bound)?;
    let basis = irreducible_basis(&start, degree_bound)?;
    let initial = compare(&hilbert(&start, degree_bound)?, hom)?;
    let surplus = surplus_words(&basis, &initial);
    let mut search = Search { literal, hom, degree_bound, weight_bound, survivors: Vec::new(), rejected: Vec::new() };
    search.explore(start, Vec::new())?;
    let unrepairable_at = if search.survivors.is_empty() {
        initial.cells.iter().map(|c| c.degree).min()
    } else {
        None
    };
    Ok(RepairReport { initial, surplus, survivors: search.survivors, rejected: search.rejected, unrepairable_at })
}

/// Judge one explicit augmentation of the literal presentation: complete it,
/// then require filtration compatibility and an exact Hilbert-function match.
pub fn evaluate_augmentation(
    sig: &AlgebraSignature,
    hom: &BigradedDimTable,
    degree_bound: i64,
    extra: &[RewriteRule],
) -> Result<AugmentationOutcome, RewriteError> {
    let (literal, weight_bound) = literal_system(sig, degree_bound)?;
    let search = Search { literal, hom, degree_bound, weight_bound, survivors: Vec::new(), rejected: Vec::new() };
    let raw = search.literal.with_extra_rules(extra)?;
    let done = match complete(&raw, weight_bound) {
        Ok(s) => s,
        Err(e @ RewriteError::CompletionFailed { .. }) => {
            return search.outcome(extra, None, Some(RejectReason::Completion { message: e.to_string() }))
        }
        Err(e) => return Err(e),
    };
    let filtration = filtration_check(&done);
    if !filtration.passed() {
        return search.outcome(extra, Some(done), Some(RejectReason::Filtration { violations: filtration.violations }));
    }
    let report = compare(&hilbert(&done, degree_bound)?, hom)?;
    let rejection = if report.is_empty() {
        None
    } else if report.has_deficit() {
        Some(RejectReason::Deficit { report })
    } else {
        Some(RejectReason::Mismatch { report })
    };
    search.outcome(extra, Some(done), rejection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{assemble_pn_homology, Coefficients};

    fn hom(n: u32, d: i64) -> BigradedDimTable {
        assemble_pn_homology(n, Coefficients::F2, d).unwrap().to_dim_table()
    }

    fn rule(l: &str, r: &str) -> RewriteRule {
        RewriteRule::new(l.parse().unwrap(), r.parse().unwrap())
    }

    #[test]
    fn n2_survivors() {
        let sig = AlgebraSignature::new(2).unwrap();
        let report = repair_search(&sig, &hom(2, 12), 12).unwrap();
        assert_eq!(report.initial.first_total_discrepancy().unwrap().degree, 0);
        let lists: Vec<Vec<String>> =
            report.survivors.iter().map(|s| s.rules.iter().map(ToString::to_string).collect()).collect();
        assert!(lists.contains(&vec!["H^2T -> 0".to_string(), "H^2Y -> 0".to_string()]), "{lists:?}");
        assert!(lists.contains(&vec!["H^2T -> H^2".to_string(), "H^2Y -> 0".to_string()]), "{lists:?}");
        assert!(report.survivors.iter().all(|s| s.system.as_ref().unwrap().is_complete()));
        assert_eq!(report.unrepairable_at, None);
    }

    #[test]
    fn h2t_forces_h2y() {
        let sig = AlgebraSignature::new(2).unwrap();
        let o = evaluate_augmentation(&sig, &hom(2, 12), 12, &[rule("H^2T", "0")]).unwrap();
        assert!(o.survived(), "{o:?}");
        assert!(o.contains(&rule("H^2Y", "0")));
        assert!(!o.locally_confluent);
    }

    #[test]
    fn y_to_t_is_rejected() {
        let sig = AlgebraSignature::new(2).unwrap();
        let o = evaluate_augmentation(&sig, &hom(2, 12), 12, &[rule("H^2Y", "T")]).unwrap();
        assert!(!o.locally_confluent);
        assert!(!o.survived());
    }

    #[test]
    fn odd_case_needs_nothing() {
        let sig = AlgebraSignature::new(3).unwrap();
        let report = repair_search(&sig, &hom(3, 12), 12).unwrap();
        assert!(report.initial.is_empty());
        assert_eq!(report.survivors.len(), 1);
        assert!(report.survivors[0].rules.is_empty());
    }
}
