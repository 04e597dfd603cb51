use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// F2 dimensions indexed by (unshifted degree, level), truncated to degrees `0..=degree_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedDimTable {
    degree_bound: i64,
    entries: BTreeMap<(i64, u32), usize>,
}

impl BigradedDimTable {
    pub fn new(degree_bound: i64) -> Self {
        BigradedDimTable { degree_bound, entries: BTreeMap::new() }
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    /// Adds `dim` to the cell; cells outside `0..=degree_bound` and zero
    /// contributions are dropped.
    pub fn add(&mut self, degree: i64, level: u32, dim: usize) {
        if dim == 0 || degree < 0 || degree > self.degree_bound {
            return;
        }
        *self.entries.entry((degree, level)).or_insert(0) += dim;
    }

    pub fn get(&self, degree: i64, level: u32) -> usize {
        self.entries.get(&(degree, level)).copied().unwrap_or(0)
    }

    pub fn total(&self, degree: i64) -> usize {
        self.entries.range((degree, 0)..=(degree, u32::MAX)).map(|(_, d)| d).sum()
    }

    pub fn level_total(&self, level: u32) -> usize {
        self.entries.iter().filter(|((_, l), _)| *l == level).map(|(_, d)| d).sum()
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        let mut ls: Vec<u32> = self.entries.keys().map(|(_, l)| *l).collect();
        ls.sort_unstable();
        ls.dedup();
        ls.into_iter()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u32, usize)> + '_ {
        self.entries.iter().map(|(&(d, l), &v)| (d, l, v))
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.entries.keys().copied()
    }
}
