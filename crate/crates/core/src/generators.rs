//! Named additive generators of H(P_n; F2) by degree and level, and the
//! transcribed tables for n = 1..4 they are checked against.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Gen, Word};

const GOLDEN: [&str; 4] = [
    include_str!("../golden/table_n1.txt"),
    include_str!("../golden/table_n2.txt"),
    include_str!("../golden/table_n3.txt"),
    include_str!("../golden/table_n4.txt"),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoldenError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no golden table for n = {0}")]
    Missing(u32),
    #[error("golden table covers levels below {covered}, {requested} requested")]
    Coverage { covered: u32, requested: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCell {
    pub degree: i64,
    pub level: u32,
    pub names: Vec<String>,
}

/// Cells keyed by (degree, level); `levels` is the number of level columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorTable {
    pub n: u32,
    pub levels: u32,
    pub cells: Vec<GeneratorCell>,
}

impl GeneratorTable {
    fn from_map(n: u32, levels: u32, map: BTreeMap<(i64, u32), Vec<String>>) -> Self {
        let cells = map.into_iter().map(|((degree, level), names)| GeneratorCell { degree, level, names }).collect();
        GeneratorTable { n, levels, cells }
    }

    pub fn cell(&self, degree: i64, level: u32) -> Option<&GeneratorCell> {
        self.cells.iter().find(|c| c.degree == degree && c.level == level)
    }

    pub fn max_degree(&self) -> i64 {
        self.cells.iter().map(|c| c.degree).max().unwrap_or(0)
    }

    /// Only the cells of levels `< levels`.
    pub fn truncated(&self, levels: u32) -> GeneratorTable {
        GeneratorTable {
            n: self.n,
            levels: levels.min(self.levels),
            cells: self.cells.iter().filter(|c| c.level < levels).cloned().collect(),
        }
    }
}

fn word(parts: &[(Gen, usize)]) -> String {
    let letters = parts.iter().flat_map(|&(g, e)| std::iter::repeat_n(g, e)).collect();
    Word::from_letters(letters).to_string()
}

fn alternating(k: u32, first_bar: bool) -> String {
    (0..k).map(|i| if (i % 2 == 1) == first_bar { "S" } else { "Sbar" }).collect()
}

/// Generators of the levels `0..levels` from the block descriptions:
/// level 0 is `U_n, H, ..., H^n`; level `k` is spanned by `H^a X Y^(k-1)` and
/// `H^a Y^k` with `X = S` (n odd) or `X = T` (n even), and for `n = 1` by the
/// alternating words in `S, Sbar` with `k` letters.
pub fn generator_table(n: u32, levels: u32) -> GeneratorTable {
    let mut map: BTreeMap<(i64, u32), Vec<String>> = BTreeMap::new();
    let ni = n as i64;
    if levels > 0 {
        map.entry((ni, 0)).or_default().push(format!("U_{n}"));
        for a in 1..=n as usize {
            map.entry((ni - a as i64, 0)).or_default().push(word(&[(Gen::H, a)]));
        }
    }
    for k in 1..levels {
        let ki = k as i64;
        if n == 1 {
            for first_bar in [false, true] {
                let w = alternating(k, first_bar);
                map.entry((ki, k)).or_default().push(format!("H{w}"));
                map.entry((ki + 1, k)).or_default().push(w);
            }
            continue;
        }
        let (x, top) = if n % 2 == 1 { (Gen::S, n as usize) } else { (Gen::T, n as usize - 1) };
        let x_top = if n % 2 == 1 { 1 + ki * ni } else { ki * ni };
        for a in 0..=top {
            map.entry((x_top - a as i64, k)).or_default().push(word(&[(Gen::H, a), (x, 1), (Gen::Y, k as usize - 1)]));
        }
        for a in 0..=top {
            map.entry(((ki + 1) * ni - a as i64, k)).or_default().push(word(&[(Gen::H, a), (Gen::Y, k as usize)]));
        }
    }
    GeneratorTable::from_map(n, levels, map)
}

/// Parses lines `degree level name,name,...`; `#` starts a comment.
pub fn parse_golden(n: u32, text: &str) -> Result<GeneratorTable, GoldenError> {
    let mut map: BTreeMap<(i64, u32), Vec<String>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| GoldenError::Parse { line: i + 1, message: message.to_string() };
        let mut fields = line.split_whitespace();
        let degree = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad degree"))?;
        let level = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad level"))?;
        let names = fields.next().ok_or_else(|| err("missing names"))?;
        if fields.next().is_some() {
            return Err(err("trailing fields"));
        }
        let cell = map.entry((degree, level)).or_default();
        if !cell.is_empty() {
            return Err(err("duplicate cell"));
        }
        cell.extend(names.split(',').map(str::to_string));
    }
    let levels = map.keys().map(|(_, l)| l + 1).max().unwrap_or(0);
    Ok(GeneratorTable::from_map(n, levels, map))
}

/// The shipped transcription for `n ∈ 1..=4`.
pub fn shipped_golden(n: u32) -> Result<GeneratorTable, GoldenError> {
    let text = (1..=4).contains(&n).then(|| GOLDEN[n as usize - 1]).ok_or(GoldenError::Missing(n))?;
    parse_golden(n, text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenMismatch {
    pub degree: i64,
    pub level: u32,
    pub computed: Vec<String>,
    pub golden: Vec<String>,
}

impl fmt::Display for GoldenMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {} level {}: computed [{}], golden [{}]",
            self.degree,
            self.level,
            self.computed.join(","),
            self.golden.join(",")
        )
    }
}

/// Cell-by-cell comparison; names within a cell are compared as sets.
pub fn compare_tables(computed: &GeneratorTable, golden: &GeneratorTable) -> Vec<GoldenMismatch> {
    let mut keys: Vec<(i64, u32)> =
        computed.cells.iter().chain(&golden.cells).map(|c| (c.degree, c.level)).collect();
    keys.sort_unstable();
    keys.dedup();
    let names = |t: &GeneratorTable, d, l| {
        let mut v = t.cell(d, l).map(|c| c.names.clone()).unwrap_or_default();
        v.sort();
        v
    };
    keys.into_iter()
        .filter_map(|(degree, level)| {
            let (c, g) = (names(computed, degree, level), names(golden, degree, level));
            (c != g).then_some(GoldenMismatch { degree, level, computed: c, golden: g })
        })
        .collect()
}

/// Compares the first `levels` columns against the shipped transcription.
pub fn check_golden(n: u32, levels: u32) -> Result<Vec<GoldenMismatch>, GoldenError> {
    let golden = shipped_golden(n)?;
    if levels > golden.levels {
        return Err(GoldenError::Coverage { covered: golden.levels, requested: levels });
    }
    Ok(compare_tables(&generator_table(n, levels), &golden.truncated(levels)))
}
