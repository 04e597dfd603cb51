use serde::Serialize;

use super::{reduce, CompletionStatus, MonomialOrder, RewriteError, RewriteRule, RewriteSystem};
use crate::algebra::{Polynomial, Word};

/// A critical pair whose two reducts disagree after full reduction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalResidue {
    pub overlap: Word,
    pub residue: Polynomial,
}

struct CriticalPair {
    overlap: Word,
    left: Polynomial,
    right: Polynomial,
}

/// Proper overlaps `lhs_i = u·x`, `lhs_j = x·v` with `weight(u·x·v) <= bound`.
fn critical_pairs(rules: &[RewriteRule], order: &MonomialOrder, bound: u64) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for a in rules {
        for b in rules {
            let (la, lb) = (a.lhs.letters(), b.lhs.letters());
            for m in 1..la.len().min(lb.len()) {
                if la[la.len() - m..] != lb[..m] {
                    continue;
                }
                let tail = b.lhs.suffix_from(m);
                let head = a.lhs.prefix(la.len() - m);
                let overlap = a.lhs.concat(&tail);
                if order.weight(&overlap) > bound {
                    continue;
                }
                out.push(CriticalPair {
                    overlap,
                    left: a.rhs.mul_word_right(&tail),
                    right: b.rhs.mul_word_left(&head),
                });
            }
        }
    }
    out
}

/// Insert `poly` into an inter-reduced rule list, evicting and re-inserting
/// any rule whose lhs becomes reducible.
fn insert_relation(
    rules: &mut Vec<RewriteRule>,
    order: &MonomialOrder,
    poly: Polynomial,
    overlap: &Word,
) -> Result<bool, RewriteError> {
    let mut queue = vec![poly];
    let mut changed = false;
    while let Some(q) = queue.pop() {
        let r = reduce(rules, order, &q)?;
        let Some(lead) = order.leading(&r).cloned() else {
            continue;
        };
        if lead.is_empty() {
            return Err(RewriteError::CompletionFailed { overlap: overlap.clone(), residue: r });
        }
        let mut rhs = r;
        rhs.toggle(lead.clone());
        let (evicted, kept): (Vec<_>, Vec<_>) = rules.drain(..).partition(|rule| rule.lhs.contains_factor(&lead));
        *rules = kept;
        queue.extend(evicted.iter().map(RewriteRule::as_polynomial));
        rules.push(RewriteRule::new(lead, rhs));
        for i in 0..rules.len() {
            let reduced = reduce(rules, order, &rules[i].rhs)?;
            rules[i].rhs = reduced;
        }
        changed = true;
    }
    rules.sort_by(|a, b| order.cmp(&a.lhs, &b.lhs));
    Ok(changed)
}

/// Knuth–Bendix completion truncated at superposition weight `weight_bound`.
/// Rules are kept inter-reduced and sorted, so the output does not depend on
/// the order in which pairs are resolved.
pub fn complete(rs: &RewriteSystem, weight_bound: u64) -> Result<RewriteSystem, RewriteError> {
    let order = *rs.order();
    let mut rules: Vec<RewriteRule> = Vec::new();
    for r in rs.rules() {
        insert_relation(&mut rules, &order, r.as_polynomial(), &r.lhs)?;
    }
    loop {
        let mut changed = false;
        for cp in critical_pairs(&rules, &order, weight_bound) {
            let residue = reduce(&rules, &order, &(&cp.left + &cp.right))?;
            if !residue.is_zero() {
                changed |= insert_relation(&mut rules, &order, residue, &cp.overlap)?;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(RewriteSystem::from_parts(
        rs.signature().clone(),
        order,
        rules,
        weight_bound,
        CompletionStatus::CompleteUpToBound,
    ))
}

/// Non-resolving critical pairs of `rs` up to `bound`, without modifying it.
/// Empty means the system is locally confluent up to the bound.
pub fn critical_pair_residues(rs: &RewriteSystem, bound: u64) -> Result<Vec<CriticalResidue>, RewriteError> {
    let mut out = Vec::new();
    for cp in critical_pairs(rs.rules(), rs.order(), bound) {
        let residue = reduce(rs.rules(), rs.order(), &(&cp.left + &cp.right))?;
        if !residue.is_zero() {
            out.push(CriticalResidue { overlap: cp.overlap, residue });
        }
    }
    Ok(out)
}
