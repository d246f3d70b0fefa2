//! Run configuration shared by every subcommand.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("format must be csv or json, got {other:?}"))),
        }
    }
}

/// Named caps on enumeration sizes and iteration counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets(BTreeMap<String, u128>);

/// `(key, default, meaning)`.
pub const BUDGET_KEYS: [(&str, u128, &str); 5] = [
    ("count", 1_000_000_000, "vectors enumerated by an exact density"),
    ("samples", 100_000_000, "Monte-Carlo samples in verify-all"),
    ("braid", 100_000_000, "tuples enumerated for braid orbits"),
    ("chains", 3_000_000, "bar chains in one bidegree"),
    ("rules", 200_000, "rewrite rules during completion"),
];

impl Default for Budgets {
    fn default() -> Self {
        Budgets(BUDGET_KEYS.iter().map(|(k, v, _)| (k.to_string(), *v)).collect())
    }
}

impl Budgets {
    /// Applies `key=value` overrides; values accept `1e8` notation.
    pub fn with_overrides<S: AsRef<str>>(overrides: &[S]) -> Result<Self> {
        let mut out = Self::default();
        for o in overrides {
            let o = o.as_ref();
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget {o:?} is not key=value")))?;
            if !out.0.contains_key(k) {
                let known: Vec<&str> = BUDGET_KEYS.iter().map(|(k, _, _)| *k).collect();
                return Err(Error::Parse(format!("unknown budget {k:?}; known: {}", known.join(", "))));
            }
            out.0.insert(k.to_string(), parse_count(v)?);
        }
        Ok(out)
    }

    pub fn get(&self, key: &str) -> u128 {
        self.0[key]
    }

    pub fn get_u64(&self, key: &str) -> u64 {
        self.get(key).min(u64::MAX as u128) as u64
    }

    pub fn get_usize(&self, key: &str) -> usize {
        self.get(key).min(usize::MAX as u128) as usize
    }
}

/// A positive count written as an integer or in `1e8` / `2.5e6` notation.
pub fn parse_count(s: &str) -> Result<u128> {
    let bad = || Error::Parse(format!("{s:?} is not a positive count"));
    let v = match s.parse::<u128>() {
        Ok(v) => v,
        Err(_) => {
            let f: f64 = s.parse().map_err(|_| bad())?;
            if !f.is_finite() || f.fract() != 0.0 || f > 1e38 {
                return Err(bad());
            }
            f as u128
        }
    };
    if v == 0 {
        return Err(bad());
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub budgets: Budgets,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            threads: None,
            cache_dir: None,
            seed: DEFAULT_SEED,
            budgets: Budgets::default(),
            format: Format::Json,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20240917;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_overrides() {
        let b = Budgets::with_overrides(&["samples=1e6", "braid=500"]).unwrap();
        assert_eq!(b.get("samples"), 1_000_000);
        assert_eq!(b.get("braid"), 500);
        assert_eq!(b.get("rules"), 200_000);
        assert!(Budgets::with_overrides(&["nope=3"]).is_err());
        assert!(Budgets::with_overrides(&["braid=0"]).is_err());
        assert!(Budgets::with_overrides(&["braid"]).is_err());
        assert!(parse_count("1.5").is_err());
    }
}
