use std::collections::BTreeMap;

use serde::Serialize;

use super::{MonomialOrder, RewriteError, RewriteSystem};
use crate::algebra::{AlgebraSignature, Word};
use crate::table::BigradedDimTable;

/// Slack kept between the heaviest certified basis word and the enumeration limit.
pub const WEIGHT_MARGIN: u64 = 4;

const MAX_BASIS_WORDS: usize = 2_000_000;

/// Irreducible words grouped by (unshifted degree, level), each group sorted
/// ascending in the monomial order.
pub type NormalBasis = BTreeMap<(i64, u32), Vec<Word>>;

/// Weight needed to see every normal-form word `H^a X^e Y^k` of unshifted
/// degree at most `degree_bound`, plus [`WEIGHT_MARGIN`].
pub fn required_weight_bound(sig: &AlgebraSignature, order: &MonomialOrder, degree_bound: i64) -> u64 {
    use crate::algebra::Gen;
    let n = sig.n() as u64;
    let d = degree_bound.max(0) as u64;
    let y_count = (d + n).div_ceil(n);
    order.weight_of(Gen::H) * (n + 1)
        + order.weight_of(sig.middle()).max(n + 1)
        + order.weight_of(Gen::Y) * y_count
        + WEIGHT_MARGIN
}

/// Enumerate irreducible words of unshifted degree in `0..=degree_bound` by
/// depth-first extension: a word is kept only if no lhs is a suffix of it,
/// which suffices because its prefix is already irreducible.
pub fn irreducible_basis(rs: &RewriteSystem, degree_bound: i64) -> Result<NormalBasis, RewriteError> {
    if !rs.is_complete() {
        return Err(RewriteError::NotComplete);
    }
    let sig = rs.signature();
    let order = rs.order();
    let limit = required_weight_bound(sig, order, degree_bound);
    if rs.weight_bound() < limit {
        return Err(RewriteError::InsufficientBound {
            required: limit,
            available: rs.weight_bound(),
            degree_bound,
        });
    }
    let n = sig.n() as i64;
    let mut basis = NormalBasis::new();
    let mut visited = 0usize;
    let mut stack = vec![(Word::one(), 0u64)];
    while let Some((w, weight)) = stack.pop() {
        visited += 1;
        if visited > MAX_BASIS_WORDS {
            return Err(RewriteError::EnumerationLimit(MAX_BASIS_WORDS));
        }
        let degree = sig.degree_unchecked(&w) + n;
        if (0..=degree_bound).contains(&degree) {
            if weight + WEIGHT_MARGIN > limit {
                return Err(RewriteError::Uncertified { word: w, weight, limit });
            }
            basis.entry((degree, w.level())).or_default().push(w.clone());
        }
        for &g in sig.alphabet() {
            let next_weight = weight + order.weight_of(g);
            if next_weight > limit {
                continue;
            }
            let mut next = w.clone();
            next.push(g);
            if rs.rules().iter().any(|r| next.ends_with(&r.lhs)) {
                continue;
            }
            stack.push((next, next_weight));
        }
    }
    for words in basis.values_mut() {
        words.sort_by(|a, b| order.cmp(a, b));
    }
    Ok(basis)
}

/// Bigraded Hilbert function of the quotient algebra up to `degree_bound`.
pub fn hilbert(rs: &RewriteSystem, degree_bound: i64) -> Result<BigradedDimTable, RewriteError> {
    let basis = irreducible_basis(rs, degree_bound)?;
    let mut table = BigradedDimTable::new(degree_bound);
    for ((d, l), words) in &basis {
        table.add(*d, *l, words.len());
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub degree: i64,
    pub level: u32,
    pub algebra: usize,
    pub homology: usize,
}

impl CellDiff {
    pub fn is_surplus(&self) -> bool {
        self.algebra > self.homology
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalDiff {
    pub degree: i64,
    pub algebra: usize,
    pub homology: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscrepancyReport {
    pub degree_bound: i64,
    pub cells: Vec<CellDiff>,
    pub totals: Vec<TotalDiff>,
}

impl DiscrepancyReport {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() && self.totals.is_empty()
    }

    pub fn first_total_discrepancy(&self) -> Option<&TotalDiff> {
        self.totals.first()
    }

    pub fn has_deficit(&self) -> bool {
        self.cells.iter().any(|c| c.algebra < c.homology)
    }
}

/// Every (degree, level) cell and every degree total where the two tables differ.
pub fn compare(alg: &BigradedDimTable, hom: &BigradedDimTable) -> Result<DiscrepancyReport, RewriteError> {
    if alg.degree_bound() != hom.degree_bound() {
        return Err(RewriteError::MismatchedBounds { algebra: alg.degree_bound(), homology: hom.degree_bound() });
    }
    let mut keys: Vec<(i64, u32)> = alg.cells().chain(hom.cells()).collect();
    keys.sort_unstable();
    keys.dedup();
    let cells = keys
        .into_iter()
        .filter_map(|(degree, level)| {
            let (a, h) = (alg.get(degree, level), hom.get(degree, level));
            (a != h).then_some(CellDiff { degree, level, algebra: a, homology: h })
        })
        .collect();
    let totals = (0..=alg.degree_bound())
        .filter_map(|degree| {
            let (a, h) = (alg.total(degree), hom.total(degree));
            (a != h).then_some(TotalDiff { degree, algebra: a, homology: h })
        })
        .collect();
    Ok(DiscrepancyReport { degree_bound: alg.degree_bound(), cells, totals })
}

/// For each surplus cell, the `excess` largest basis words in that cell.
pub fn surplus_words(basis: &NormalBasis, report: &DiscrepancyReport) -> Vec<(CellDiff, Vec<Word>)> {
    report
        .cells
        .iter()
        .filter(|c| c.is_surplus())
        .map(|c| {
            let words = basis.get(&(c.degree, c.level)).map(Vec::as_slice).unwrap_or_default();
            let excess = c.algebra - c.homology;
            (c.clone(), words[words.len() - excess..].iter().rev().cloned().collect())
        })
        .collect()
}
