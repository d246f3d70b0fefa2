//! Bigraded tables of nonnegative integers indexed by `(a, b)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedTable {
    entries: BTreeMap<(u32, u32), u64>,
}

impl BigradedTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Missing entries read as zero.
    pub fn get(&self, a: u32, b: u32) -> u64 {
        self.entries.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Stores `value`; zero values are dropped so equality ignores explicit zeros.
    pub fn set(&mut self, a: u32, b: u32, value: u64) {
        if value == 0 {
            self.entries.remove(&(a, b));
        } else {
            self.entries.insert((a, b), value);
        }
    }

    /// Nonzero entries in `(a, b)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Keeps entries with `a ≤ a_max` and `b ≤ b_max`.
    pub fn window(&self, a_max: u32, b_max: u32) -> BigradedTable {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|((a, b), _)| *a <= a_max && *b <= b_max)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// Cells in the window where the two tables differ, as `(a, b, self, other)`.
    pub fn differences(&self, other: &BigradedTable, a_max: u32, b_max: u32) -> Vec<(u32, u32, u64, u64)> {
        let mut out = Vec::new();
        for b in 0..=b_max {
            for a in 0..=a_max {
                let (x, y) = (self.get(a, b), other.get(a, b));
                if x != y {
                    out.push((a, b, x, y));
                }
            }
        }
        out
    }
}
