//! String rewriting over F2 for the presented path-homology algebras.
//!
//! Relations are oriented under a weight-lex monomial order, completed by
//! critical-pair resolution up to a word-weight bound, and then used to
//! enumerate normal-form bases and compare them against homology tables.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraSignature, Gen, ParityClass, Polynomial, Word};

mod checks;
mod completion;
mod hilbert;
mod repair;

pub use checks::{
    anti_automorphism_check, derived_relation_checks, filtration_check, heredity_check, FiltrationReport,
    HeredityReport,
};
pub use completion::{complete, critical_pair_residues, CriticalResidue};
pub use hilbert::{
    compare, hilbert, irreducible_basis, required_weight_bound, surplus_words, CellDiff, DiscrepancyReport,
    NormalBasis, TotalDiff, WEIGHT_MARGIN,
};
pub use repair::{evaluate_augmentation, repair_search, AugmentationOutcome, RejectReason, RepairReport};

/// Upper bound on single-word rewrite steps in one normal-form computation.
pub const MAX_REDUCTION_STEPS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RewriteError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("order rejected for relation {relation}: {detail}")]
    OrderRejected { relation: String, detail: String },
    #[error("word {word} has weight {weight} beyond the completion bound {bound}")]
    Truncation { word: Word, weight: u64, bound: u64 },
    #[error("normal form did not terminate within {MAX_REDUCTION_STEPS} steps")]
    StepLimit,
    #[error("completion failed: overlap {overlap} leaves the constant residue {residue}")]
    CompletionFailed { overlap: Word, residue: Polynomial },
    #[error("rewrite system has not been completed")]
    NotComplete,
    #[error("weight bound {available} is below the {required} needed for degree bound {degree_bound}")]
    InsufficientBound { required: u64, available: u64, degree_bound: i64 },
    #[error("irreducible word {word} of weight {weight} lies too close to the enumeration bound {limit}")]
    Uncertified { word: Word, weight: u64, limit: u64 },
    #[error("too many irreducible words (more than {0})")]
    EnumerationLimit(usize),
    #[error("degree bounds differ: algebra {algebra}, homology {homology}")]
    MismatchedBounds { algebra: i64, homology: i64 },
    #[error("rule {0} does not decrease in the monomial order")]
    NonDecreasingRule(String),
}

/// Weight-lex order: compare total weight, then left-to-right with `H < T < S < Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    weights: [u64; 4],
}

impl MonomialOrder {
    /// Unit weights, except `w(S) = n + 1` when n ≡ 1 mod 4 so that
    /// `H^(n-1)Y^2 < YS`.
    pub fn default_for(sig: &AlgebraSignature) -> Self {
        let mut weights = [1; 4];
        if sig.parity() == ParityClass::Odd1 {
            weights[Gen::S.index()] = sig.n() as u64 + 1;
        }
        MonomialOrder { weights }
    }

    /// Weights in the order `H, T, S, Y`; all must be positive.
    pub fn with_weights(weights: [u64; 4]) -> Option<Self> {
        weights.iter().all(|w| *w > 0).then_some(MonomialOrder { weights })
    }

    pub fn weight_of(&self, g: Gen) -> u64 {
        self.weights[g.index()]
    }

    pub fn weight(&self, w: &Word) -> u64 {
        w.letters().iter().map(|g| self.weight_of(*g)).sum()
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b))
    }

    pub fn leading<'a>(&self, p: &'a Polynomial) -> Option<&'a Word> {
        p.terms().max_by(|a, b| self.cmp(a, b))
    }

    fn key(&self, w: Word) -> (u64, Word) {
        (self.weight(&w), w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Polynomial,
}

impl RewriteRule {
    pub fn new(lhs: Word, rhs: Polynomial) -> Self {
        RewriteRule { lhs, rhs }
    }

    /// `lhs + rhs`, the element of the ideal this rule encodes.
    pub fn as_polynomial(&self) -> Polynomial {
        &Polynomial::from(self.lhs.clone()) + &self.rhs
    }

    pub fn is_decreasing(&self, order: &MonomialOrder) -> bool {
        self.rhs.terms().all(|t| order.cmp(t, &self.lhs) == Ordering::Less)
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompletionStatus {
    CompleteUpToBound,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewriteSystem {
    sig: AlgebraSignature,
    order: MonomialOrder,
    rules: Vec<RewriteRule>,
    weight_bound: u64,
    status: CompletionStatus,
}

impl RewriteSystem {
    pub(crate) fn from_parts(
        sig: AlgebraSignature,
        order: MonomialOrder,
        mut rules: Vec<RewriteRule>,
        weight_bound: u64,
        status: CompletionStatus,
    ) -> Self {
        rules.sort_by(|a, b| order.cmp(&a.lhs, &b.lhs));
        RewriteSystem { sig, order, rules, weight_bound, status }
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn weight_bound(&self) -> u64 {
        self.weight_bound
    }

    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == CompletionStatus::CompleteUpToBound
    }

    pub fn rule_for(&self, lhs: &Word) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| &r.lhs == lhs)
    }

    /// Adds rules without completing; the result is marked incomplete.
    pub fn with_extra_rules(&self, extra: &[RewriteRule]) -> Result<RewriteSystem, RewriteError> {
        for r in extra {
            self.sig.check_word(&r.lhs)?;
            self.sig.check_poly(&r.rhs)?;
            if !r.is_decreasing(&self.order) {
                return Err(RewriteError::NonDecreasingRule(r.to_string()));
            }
        }
        let mut rules = self.rules.clone();
        rules.extend(extra.iter().cloned());
        Ok(RewriteSystem::from_parts(
            self.sig.clone(),
            self.order,
            rules,
            self.weight_bound,
            CompletionStatus::Incomplete,
        ))
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        leftmost_match(&self.rules, w).is_some()
    }

    /// Fully reduce `p`. For completed systems every input word must lie
    /// within the weight bound, where normal forms are unique.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, RewriteError> {
        self.sig.check_poly(p)?;
        if self.is_complete() {
            if let Some(w) = p.terms().find(|w| self.order.weight(w) > self.weight_bound) {
                return Err(RewriteError::Truncation {
                    word: w.clone(),
                    weight: self.order.weight(w),
                    bound: self.weight_bound,
                });
            }
        }
        reduce(&self.rules, &self.order, p)
    }

    pub fn normal_form_word(&self, w: &Word) -> Result<Polynomial, RewriteError> {
        self.normal_form(&Polynomial::from(w.clone()))
    }
}

/// Position and rule of the leftmost lhs occurrence in `w`.
pub(crate) fn leftmost_match<'a>(rules: &'a [RewriteRule], w: &Word) -> Option<(usize, &'a RewriteRule)> {
    let letters = w.letters();
    (0..letters.len()).find_map(|i| {
        rules
            .iter()
            .find(|r| letters[i..].starts_with(r.lhs.letters()))
            .map(|r| (i, r))
    })
}

/// Normal form by repeatedly rewriting the largest reducible word at its
/// leftmost redex. Words produced by a step are smaller than the word
/// rewritten, so irreducible words collected so far never recur.
pub(crate) fn reduce(
    rules: &[RewriteRule],
    order: &MonomialOrder,
    p: &Polynomial,
) -> Result<Polynomial, RewriteError> {
    let mut pending: BTreeSet<(u64, Word)> = p.terms().map(|w| order.key(w.clone())).collect();
    let mut done = Polynomial::zero();
    let mut steps = 0usize;
    while let Some((_, w)) = pending.pop_last() {
        match leftmost_match(rules, &w) {
            None => done.toggle(w),
            Some((pos, rule)) => {
                steps += 1;
                if steps > MAX_REDUCTION_STEPS {
                    return Err(RewriteError::StepLimit);
                }
                for t in rule.rhs.terms() {
                    let key = order.key(w.splice(pos, rule.lhs.len(), t));
                    if !pending.remove(&key) {
                        pending.insert(key);
                    }
                }
            }
        }
    }
    Ok(done)
}

/// Turn the defining relations into rules, checking that each relation's
/// intended leading word is strictly the largest under `order`.
pub fn orient(sig: &AlgebraSignature, order: &MonomialOrder) -> Result<RewriteSystem, RewriteError> {
    let mut rules = Vec::new();
    for rel in sig.defining_relations() {
        let rule = RewriteRule::new(rel.lead.clone(), rel.rest.clone());
        if let Some(bad) = rule.rhs.terms().find(|t| order.cmp(t, &rule.lhs) != Ordering::Less) {
            return Err(RewriteError::OrderRejected {
                relation: rel.name.clone(),
                detail: format!("{bad} is not smaller than {}", rule.lhs),
            });
        }
        rules.push(rule);
    }
    Ok(RewriteSystem::from_parts(sig.clone(), *order, rules, 0, CompletionStatus::Incomplete))
}

/// Orient with the default order and complete far enough to certify Hilbert
/// functions up to `degree_bound`.
pub fn standard_system(n: u32, degree_bound: i64) -> Result<RewriteSystem, RewriteError> {
    let sig = AlgebraSignature::new(n)?;
    let order = MonomialOrder::default_for(&sig);
    let oriented = orient(&sig, &order)?;
    complete(&oriented, required_weight_bound(&sig, &order, degree_bound))
}
