//! Additive homology of the path space `P_n` of (CP^n, RP^n), assembled from
//! closed-form ingredients: the homology of RP^n with trivial and twisted
//! coefficients, a two-row spectral sequence for the unit tangent bundle
//! ST RP^n, and the shifted direct sum over critical levels.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::CheckItem;
use crate::table::BigradedDimTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("n must be at least {min}, got {n}")]
    InvalidDimension { n: u32, min: u32 },
    #[error("coefficient system {coeff} is not supported on {space} for n = {n}")]
    Unsupported { n: u32, coeff: CoefficientSystem, space: &'static str },
    #[error("table {0} is not integral")]
    NotIntegral(String),
}

/// Finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`, torsion orders sorted
/// ascending, each a prime power (`Z/4` stays a single entry).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: u32,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: u32) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// `Z/order`; `order` must be a prime power ≥ 2.
    pub fn cyclic(order: u64) -> Self {
        debug_assert!(order >= 2 && is_prime_power(order));
        AbelianGroup { rank: 0, torsion: vec![order] }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut torsion: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        torsion.sort_unstable();
        AbelianGroup { rank: self.rank + other.rank, torsion }
    }

    /// Number of cyclic summands of 2-power order.
    pub fn two_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|t| t.is_power_of_two()).count()
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.windows(2).all(|w| w[0] <= w[1]) && self.torsion.iter().all(|t| *t >= 2 && is_prime_power(*t))
    }
}

fn is_prime_power(m: u64) -> bool {
    let p = (2..=m).find(|p| m % p == 0).unwrap_or(m);
    let mut r = m;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join("+"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientSystem {
    ZTrivial,
    /// Orientation system `o` of RP^n.
    ZTwistedO,
    /// Pullback `π*o` of the orientation system to ST RP^n.
    ZPullbackO,
    F2,
}

impl CoefficientSystem {
    pub fn is_integral(self) -> bool {
        self != CoefficientSystem::F2
    }
}

impl fmt::Display for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoefficientSystem::ZTrivial => "Z",
            CoefficientSystem::ZTwistedO => "Z[o]",
            CoefficientSystem::ZPullbackO => "Z[pi*o]",
            CoefficientSystem::F2 => "F2",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entry {
    Group(AbelianGroup),
    Dim(usize),
}

impl Entry {
    pub fn is_zero(&self) -> bool {
        match self {
            Entry::Group(g) => g.is_zero(),
            Entry::Dim(d) => *d == 0,
        }
    }

    pub fn group(&self) -> Option<&AbelianGroup> {
        match self {
            Entry::Group(g) => Some(g),
            Entry::Dim(_) => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Entry::Dim(d) => Some(*d),
            Entry::Group(_) => None,
        }
    }

    fn sum(&self, other: &Entry) -> Entry {
        match (self, other) {
            (Entry::Group(a), Entry::Group(b)) => Entry::Group(a.direct_sum(b)),
            (Entry::Dim(a), Entry::Dim(b)) => Entry::Dim(a + b),
            _ => panic!("mixing integral and F2 entries"),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Group(g) => write!(f, "{g}"),
            Entry::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Degree-indexed groups (or F2 dimensions), optionally split by level.
/// Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedGroupTable {
    pub label: String,
    pub coefficients: CoefficientSystem,
    pub degree_bound: i64,
    #[serde(rename = "cells", serialize_with = "cells_as_list")]
    entries: BTreeMap<(i64, Option<u32>), Entry>,
}

#[derive(Serialize)]
struct CellOut<'a> {
    degree: i64,
    level: Option<u32>,
    #[serde(flatten)]
    entry: &'a Entry,
}

fn cells_as_list<S: serde::Serializer>(
    entries: &BTreeMap<(i64, Option<u32>), Entry>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(entries.iter().map(|(&(degree, level), entry)| CellOut { degree, level, entry }))
}

impl GradedGroupTable {
    pub fn new(label: impl Into<String>, coefficients: CoefficientSystem, degree_bound: i64) -> Self {
        GradedGroupTable { label: label.into(), coefficients, degree_bound, entries: BTreeMap::new() }
    }

    fn zero_entry(&self) -> Entry {
        if self.coefficients.is_integral() {
            Entry::Group(AbelianGroup::zero())
        } else {
            Entry::Dim(0)
        }
    }

    /// Direct-sums `e` into the cell; zero entries and degrees outside the
    /// bound are dropped.
    pub fn add(&mut self, degree: i64, level: Option<u32>, e: Entry) {
        if e.is_zero() || degree < 0 || degree > self.degree_bound {
            return;
        }
        let cell = self.entries.entry((degree, level)).or_insert_with(|| match e {
            Entry::Group(_) => Entry::Group(AbelianGroup::zero()),
            Entry::Dim(_) => Entry::Dim(0),
        });
        *cell = cell.sum(&e);
    }

    pub fn cell(&self, degree: i64, level: Option<u32>) -> Entry {
        self.entries.get(&(degree, level)).cloned().unwrap_or_else(|| self.zero_entry())
    }

    /// Direct sum over all levels in one degree.
    pub fn at(&self, degree: i64) -> Entry {
        self.entries
            .range((degree, None)..=(degree, Some(u32::MAX)))
            .fold(self.zero_entry(), |acc, (_, e)| acc.sum(e))
    }

    pub fn group(&self, degree: i64) -> AbelianGroup {
        self.at(degree).group().cloned().unwrap_or_default()
    }

    /// F2 dimension in one degree; only meaningful for F2 tables.
    pub fn dim(&self, degree: i64) -> usize {
        self.at(degree).dim().unwrap_or(0)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.degree_bound).map(|d| self.dim(d)).collect()
    }

    pub fn groups(&self) -> Vec<AbelianGroup> {
        (0..=self.degree_bound).map(|d| self.group(d)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Option<u32>, &Entry)> + '_ {
        self.entries.iter().map(|(&(d, l), e)| (d, l, e))
    }

    pub fn is_canonical(&self) -> bool {
        self.entries.values().all(|e| e.group().is_none_or(AbelianGroup::is_canonical))
    }

    /// F2 dimensions keyed by (degree, level); unlevelled cells go to level 0.
    pub fn to_dim_table(&self) -> BigradedDimTable {
        let mut t = BigradedDimTable::new(self.degree_bound);
        for (d, l, e) in self.iter() {
            t.add(d, l.unwrap_or(0), e.dim().unwrap_or(0));
        }
        t
    }
}

fn z() -> Entry {
    Entry::Group(AbelianGroup::free(1))
}

fn z2() -> Entry {
    Entry::Group(AbelianGroup::cyclic(2))
}

fn zero() -> Entry {
    Entry::Group(AbelianGroup::zero())
}

/// Homology of RP^n in degrees `0..=n`.
pub fn rpn_homology(n: u32, coeff: CoefficientSystem) -> Result<GradedGroupTable, HomologyError> {
    if n == 0 {
        return Err(HomologyError::InvalidDimension { n, min: 1 });
    }
    let odd = n % 2 == 1;
    let mut t = GradedGroupTable::new(format!("RP^{n}"), coeff, n as i64);
    for d in 0..=n {
        let e = match coeff {
            CoefficientSystem::F2 => Entry::Dim(1),
            // the orientation system is trivial for odd n
            CoefficientSystem::ZTrivial | CoefficientSystem::ZTwistedO if odd => {
                if d == 0 || d == n {
                    z()
                } else if d % 2 == 1 {
                    z2()
                } else {
                    zero()
                }
            }
            // (Z, Z/2, 0, ..., Z/2, 0)
            CoefficientSystem::ZTrivial => match d {
                0 => z(),
                d if d % 2 == 1 => z2(),
                _ => zero(),
            },
            // (Z/2, 0, ..., Z/2, 0, Z)
            CoefficientSystem::ZTwistedO => {
                if d == n {
                    z()
                } else if d % 2 == 0 {
                    z2()
                } else {
                    zero()
                }
            }
            CoefficientSystem::ZPullbackO => {
                return Err(HomologyError::Unsupported { n, coeff, space: "RP^n" });
            }
        };
        t.add(d as i64, None, e);
    }
    Ok(t)
}

/// Euler number of RP^n.
fn euler_number(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        0
    }
}

/// Homology of ST RP^n in degrees `0..=2n-1` from the two-row spectral
/// sequence of the sphere bundle `S^(n-1) -> ST RP^n -> RP^n`.
///
/// Rows are the base homology in fiber degrees 0 and n-1; the top row carries
/// the extra twist by the orientation system of the tangent bundle. The only
/// possible differential `E_{n,0} -> E_{0,n-1}` is multiplication by the Euler
/// number of RP^n. The one non-split extension (n even, degree n-1, trivial
/// integral coefficients, Z/2 by Z/2) is `Z/4`.
pub fn st_rpn_homology(n: u32, coeff: CoefficientSystem) -> Result<GradedGroupTable, HomologyError> {
    if n == 0 {
        return Err(HomologyError::InvalidDimension { n, min: 1 });
    }
    let top = 2 * n as i64 - 1;
    let mut t = GradedGroupTable::new(format!("ST RP^{n}"), coeff, top);
    if n == 1 {
        // two circles
        let e = match coeff {
            CoefficientSystem::F2 => Entry::Dim(2),
            CoefficientSystem::ZTrivial | CoefficientSystem::ZPullbackO => Entry::Group(AbelianGroup::free(2)),
            CoefficientSystem::ZTwistedO => {
                return Err(HomologyError::Unsupported { n, coeff, space: "ST RP^n" });
            }
        };
        t.add(0, None, e.clone());
        t.add(1, None, e);
        return Ok(t);
    }
    let (bottom_coeff, top_coeff) = match coeff {
        CoefficientSystem::ZTrivial => (CoefficientSystem::ZTrivial, CoefficientSystem::ZTwistedO),
        CoefficientSystem::ZPullbackO => (CoefficientSystem::ZTwistedO, CoefficientSystem::ZTrivial),
        CoefficientSystem::F2 => (CoefficientSystem::F2, CoefficientSystem::F2),
        CoefficientSystem::ZTwistedO => {
            return Err(HomologyError::Unsupported { n, coeff, space: "ST RP^n" });
        }
    };
    let row = |c| -> Result<Vec<Entry>, HomologyError> {
        let r = rpn_homology(n, c)?;
        Ok((0..=n as i64).map(|d| r.cell(d, None)).collect())
    };
    let mut bottom = row(bottom_coeff)?;
    let mut top_row = row(top_coeff)?;

    let chi = euler_number(n);
    let (src, dst) = (&bottom[n as usize], &top_row[0]);
    match (src, dst) {
        _ if chi == 0 || src.is_zero() || dst.is_zero() => {}
        (Entry::Dim(1), Entry::Dim(1)) => {
            // odd Euler number: an isomorphism over F2
            bottom[n as usize] = Entry::Dim(0);
            top_row[0] = Entry::Dim(0);
        }
        (Entry::Group(a), Entry::Group(b)) if *a == AbelianGroup::free(1) && *b == AbelianGroup::free(1) => {
            // multiplication by ±1 on Z
            bottom[n as usize] = zero();
            top_row[0] = zero();
        }
        _ => return Err(HomologyError::Unsupported { n, coeff, space: "ST RP^n" }),
    }

    let shift = n as i64 - 1;
    for d in 0..=top {
        let lower = usize::try_from(d).ok().and_then(|i| bottom.get(i)).cloned();
        let upper = usize::try_from(d - shift).ok().and_then(|i| top_row.get(i)).cloned();
        let entry = match (lower, upper) {
            (Some(a), Some(b)) if !a.is_zero() && !b.is_zero() => match (&a, &b) {
                (Entry::Dim(_), Entry::Dim(_)) => a.sum(&b),
                (Entry::Group(ga), Entry::Group(gb)) if ga.is_free() || gb.is_free() => a.sum(&b),
                (Entry::Group(ga), Entry::Group(gb))
                    if coeff == CoefficientSystem::ZTrivial
                        && n % 2 == 0
                        && d == shift
                        && ga.torsion == [2]
                        && gb.torsion == [2] =>
                {
                    Entry::Group(AbelianGroup::cyclic(4))
                }
                _ => return Err(HomologyError::Unsupported { n, coeff, space: "ST RP^n" }),
            },
            (Some(a), Some(b)) => a.sum(&b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => continue,
        };
        t.add(d, None, entry);
    }
    Ok(t)
}

/// Orientation system of the negative bundle of the level-`k` critical
/// manifold, viewed on ST RP^n: nontrivial exactly for even `n` and even `k`.
pub fn block_local_system(n: u32, k: u32) -> CoefficientSystem {
    if n % 2 == 0 && k % 2 == 0 {
        CoefficientSystem::ZPullbackO
    } else {
        CoefficientSystem::ZTrivial
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Integral,
    F2,
}

/// Lowest degree occupied by the level-`k` block, `1 + (k-1)n`.
pub fn block_shift(n: u32, k: u32) -> i64 {
    1 + (k as i64 - 1) * n as i64
}

/// Homology of `P_n` up to `degree_bound` as the direct sum of the level-0
/// block H(RP^n) and the shifted level-k blocks H(ST RP^n; o_k)[1 + (k-1)n],
/// each cell annotated with its level.
pub fn assemble_pn_homology(n: u32, coeff: Coefficients, degree_bound: i64) -> Result<GradedGroupTable, HomologyError> {
    let level0_coeff = match coeff {
        Coefficients::Integral => CoefficientSystem::ZTrivial,
        Coefficients::F2 => CoefficientSystem::F2,
    };
    let mut t = GradedGroupTable::new(format!("P_{n}"), level0_coeff, degree_bound);
    for (d, _, e) in rpn_homology(n, level0_coeff)?.iter() {
        t.add(d, Some(0), e.clone());
    }
    let mut k = 1u32;
    while block_shift(n, k) <= degree_bound {
        let block_coeff = match coeff {
            Coefficients::Integral => block_local_system(n, k),
            Coefficients::F2 => CoefficientSystem::F2,
        };
        let shift = block_shift(n, k);
        for (d, _, e) in st_rpn_homology(n, block_coeff)?.iter() {
            t.add(d + shift, Some(k), e.clone());
        }
        k += 1;
    }
    Ok(t)
}

/// Universal-coefficient F2 dimensions of an integral table, computed per
/// level: `rank(H_d) + #2-torsion(H_d) + #2-torsion(H_{d-1})`.
pub fn uct_f2(table: &GradedGroupTable) -> Result<GradedGroupTable, HomologyError> {
    if !table.coefficients.is_integral() {
        return Err(HomologyError::NotIntegral(table.label.clone()));
    }
    let mut out = GradedGroupTable::new(table.label.clone(), CoefficientSystem::F2, table.degree_bound);
    let mut keys: Vec<(i64, Option<u32>)> = table.iter().flat_map(|(d, l, _)| [(d, l), (d + 1, l)]).collect();
    keys.sort_unstable();
    keys.dedup();
    for (d, l) in keys {
        let here = table.cell(d, l);
        let below = table.cell(d - 1, l);
        let g = here.group().cloned().unwrap_or_default();
        let dim = g.rank as usize
            + g.two_torsion_count()
            + below.group().map(AbelianGroup::two_torsion_count).unwrap_or(0);
        out.add(d, l, Entry::Dim(dim));
    }
    Ok(out)
}

/// Sanity suite for ST RP^n: Euler characteristic, Poincaré duality, UCT
/// agreement for every supported coefficient system, and H_1.
pub fn consistency_checks(n: u32) -> Result<Vec<CheckItem>, HomologyError> {
    if n < 2 {
        return Err(HomologyError::InvalidDimension { n, min: 2 });
    }
    let f2 = st_rpn_homology(n, CoefficientSystem::F2)?;
    let dims = f2.dims();
    let mut items = Vec::new();

    let chi: i64 = dims.iter().enumerate().map(|(d, b)| if d % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
    items.push(CheckItem::new("euler characteristic", chi == 0, format!("chi = {chi}, dims {dims:?}")));

    let top = 2 * n as usize - 1;
    let symmetric = (0..=top).all(|d| dims[d] == dims[top - d]);
    items.push(CheckItem::new("F2 Poincare duality", symmetric, format!("dims {dims:?}")));

    for coeff in [CoefficientSystem::ZTrivial, CoefficientSystem::ZPullbackO] {
        let integral = st_rpn_homology(n, coeff)?;
        let via_uct = uct_f2(&integral)?.dims();
        items.push(CheckItem::new(
            format!("UCT({coeff}) = F2"),
            via_uct == dims,
            format!("uct {via_uct:?}, direct {dims:?}"),
        ));
    }

    let h1 = st_rpn_homology(n, CoefficientSystem::ZTrivial)?.group(1);
    let expected = AbelianGroup::cyclic(if n == 2 { 4 } else { 2 });
    items.push(CheckItem::new("H_1 = pi_1", h1 == expected, format!("H_1 = {h1}, expected {expected}")));
    Ok(items)
}

/// Rank of the homology of the limit path space: 1 in degree 0, 2 above.
pub fn stable_ranks(degree: u32) -> usize {
    if degree == 0 {
        1
    } else {
        2
    }
}

/// F2 dimensions of the first two levels of `P_n` in degrees `0..=degree_bound`.
pub fn first_two_columns(n: u32, degree_bound: i64) -> Result<Vec<usize>, HomologyError> {
    let t = assemble_pn_homology(n, Coefficients::F2, degree_bound)?;
    Ok((0..=degree_bound)
        .map(|d| (0..=1).map(|l| t.cell(d, Some(l)).dim().unwrap_or(0)).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoefficientSystem::*;

    fn groups(s: &str) -> Vec<AbelianGroup> {
        s.split(',')
            .map(|g| match g.trim() {
                "0" => AbelianGroup::zero(),
                "Z" => AbelianGroup::free(1),
                "Z^2" => AbelianGroup::free(2),
                other => {
                    let parts: Vec<&str> = other.split('+').collect();
                    parts.iter().fold(AbelianGroup::zero(), |acc, p| {
                        let g = if *p == "Z" {
                            AbelianGroup::free(1)
                        } else {
                            AbelianGroup::cyclic(p.trim_start_matches("Z/").parse().unwrap())
                        };
                        acc.direct_sum(&g)
                    })
                }
            })
            .collect()
    }

    #[test]
    fn rpn_tables() {
        assert_eq!(rpn_homology(3, ZTrivial).unwrap().groups(), groups("Z, Z/2, 0, Z"));
        assert_eq!(rpn_homology(2, ZTwistedO).unwrap().groups(), groups("Z/2, 0, Z"));
        assert_eq!(rpn_homology(4, ZTrivial).unwrap().groups(), groups("Z, Z/2, 0, Z/2, 0"));
        assert_eq!(rpn_homology(3, ZTwistedO).unwrap().groups(), groups("Z, Z/2, 0, Z"));
        assert_eq!(rpn_homology(2, F2).unwrap().dims(), vec![1, 1, 1]);
        assert!(rpn_homology(2, ZPullbackO).is_err());
    }

    #[test]
    fn st_rp2_is_lens_space() {
        assert_eq!(st_rpn_homology(2, ZTrivial).unwrap().groups(), groups("Z, Z/4, 0, Z"));
        assert_eq!(st_rpn_homology(2, F2).unwrap().dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn st_rp2_twisted_matches_cellular_chain_complex() {
        // ST RP^2 = L(4,1); with the sign local system the cellular complex
        // Z <-2- Z <-0- Z <-2- Z (generator acting by -1) gives Z/2, 0, Z/2, 0.
        assert_eq!(st_rpn_homology(2, ZPullbackO).unwrap().groups(), groups("Z/2, 0, Z/2, 0"));
    }

    #[test]
    fn st_rp3_tensor_structure() {
        assert_eq!(st_rpn_homology(3, F2).unwrap().dims(), vec![1, 1, 2, 2, 1, 1]);
        assert_eq!(st_rpn_homology(3, ZTrivial).unwrap().groups(), groups("Z, Z/2, Z, Z+Z/2, 0, Z"));
    }

    #[test]
    fn st_even_f2_is_one_per_degree() {
        for n in [2, 4, 6, 8] {
            assert_eq!(st_rpn_homology(n, F2).unwrap().dims(), vec![1; 2 * n as usize]);
        }
    }

    #[test]
    fn st_rp1_is_two_circles() {
        assert_eq!(st_rpn_homology(1, F2).unwrap().dims(), vec![2, 2]);
        assert_eq!(st_rpn_homology(1, ZTrivial).unwrap().groups(), groups("Z^2, Z^2"));
        assert!(st_rpn_homology(3, ZTwistedO).is_err());
    }

    #[test]
    fn local_systems() {
        assert_eq!(block_local_system(3, 2), ZTrivial);
        assert_eq!(block_local_system(2, 2), ZPullbackO);
        assert_eq!(block_local_system(2, 3), ZTrivial);
        assert_eq!(block_local_system(2, 1), ZTrivial);
    }

    #[test]
    fn assembled_examples() {
        let t = assemble_pn_homology(3, Coefficients::F2, 7).unwrap();
        assert_eq!(t.cell(7, Some(2)).dim(), Some(2));
        // the level-3 block begins at 1 + 2n = 7
        assert_eq!(t.cell(7, Some(3)).dim(), Some(1));
        assert_eq!(t.dim(7), 3);

        let z = assemble_pn_homology(2, Coefficients::Integral, 6).unwrap();
        assert_eq!(z.group(2), AbelianGroup::cyclic(4));
        assert_eq!(z.cell(2, Some(1)), Entry::Group(AbelianGroup::cyclic(4)));

        let one = assemble_pn_homology(1, Coefficients::F2, 12).unwrap();
        for k in 1..=10u32 {
            assert_eq!(one.cell(k as i64 + 1, Some(k)).dim(), Some(2));
            assert_eq!(one.cell(k as i64, Some(k)).dim(), Some(2));
        }
    }

    #[test]
    fn uct_examples() {
        let st2 = st_rpn_homology(2, ZTrivial).unwrap();
        assert_eq!(uct_f2(&st2).unwrap().dims(), vec![1, 1, 1, 1]);
        let rp3 = rpn_homology(3, ZTrivial).unwrap();
        assert_eq!(uct_f2(&rp3).unwrap().dims(), vec![1, 1, 1, 1]);
        let free = GradedGroupTable::new("free", ZTrivial, 2);
        assert_eq!(uct_f2(&free).unwrap().dims(), vec![0, 0, 0]);
        assert!(uct_f2(&st_rpn_homology(2, F2).unwrap()).is_err());
    }

    #[test]
    fn consistency_suite() {
        for n in 2..=8 {
            for item in consistency_checks(n).unwrap() {
                assert!(item.passed, "n={n}: {item:?}");
            }
        }
        assert!(consistency_checks(1).is_err());
    }

    #[test]
    fn h1_values() {
        assert_eq!(st_rpn_homology(2, ZTrivial).unwrap().group(1), AbelianGroup::cyclic(4));
        assert_eq!(st_rpn_homology(4, ZTrivial).unwrap().group(1), AbelianGroup::cyclic(2));
    }

    #[test]
    fn block_totals_and_shifts() {
        for n in 1..=8u32 {
            let t = assemble_pn_homology(n, Coefficients::F2, 12 * n as i64).unwrap();
            let block = if n == 1 { 4 } else if n % 2 == 1 { 2 * (n + 1) } else { 2 * n } as usize;
            let cells: Vec<_> = t.iter().collect();
            let level_total = |k: u32| cells.iter().filter(|(_, l, _)| *l == Some(k)).map(|(_, _, e)| e.dim().unwrap()).sum::<usize>();
            assert_eq!(level_total(0), n as usize + 1);
            for k in 1..=8u32 {
                assert_eq!(level_total(k), block, "n={n} k={k}");
                let degrees: Vec<i64> = cells.iter().filter(|(_, l, _)| *l == Some(k)).map(|(d, _, _)| *d).collect();
                assert_eq!(*degrees.iter().min().unwrap(), block_shift(n, k));
                assert_eq!(*degrees.iter().max().unwrap(), (k as i64 + 1) * n as i64);
            }
        }
    }

    #[test]
    fn stable_rank_values() {
        assert_eq!(stable_ranks(0), 1);
        assert_eq!(stable_ranks(5), 2);
        let cols = first_two_columns(10, 8).unwrap();
        assert_eq!(cols, vec![1, 2, 2, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn canonical_groups() {
        assert!(AbelianGroup::cyclic(4).is_canonical());
        let bad = AbelianGroup { rank: 0, torsion: vec![6] };
        assert!(!bad.is_canonical());
        assert_eq!(AbelianGroup::free(1).direct_sum(&AbelianGroup::cyclic(2)).to_string(), "Z+Z/2");
    }
}
