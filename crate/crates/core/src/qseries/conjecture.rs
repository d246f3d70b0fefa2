//! Mechanical check of the slope inequalities conjectured for the quintic zeta function.

use num_traits::Signed;

use super::series::TruncatedTSeries;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    /// `a + 1 < b` for every nonzero `q^a t^b` with `b ≥ 2`.
    A,
    /// `2a + 1 < b` for every nonzero `q^a t^b` with `b ≥ 2`.
    B,
}

impl std::str::FromStr for Strength {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Strength::A),
            "b" | "B" => Ok(Strength::B),
            other => Err(Error::Parse(format!("strength must be a or b, got {other:?}"))),
        }
    }
}

/// Returns the first violating monomial `(a, b)`, or `None` if the inequality holds throughout.
pub fn conjecture5_violation(series: &TruncatedTSeries, strength: Strength) -> Result<Option<(i64, usize)>> {
    for (b, c) in series.coeffs().iter().enumerate() {
        for (a, v) in c.terms() {
            if !v.is_integer() || v.is_negative() {
                return Err(Error::Precondition(format!(
                    "coefficient {v} of q^{a} t^{b} is not a nonnegative integer"
                )));
            }
        }
    }
    for (b, c) in series.coeffs().iter().enumerate().skip(2) {
        for (a, _) in c.terms() {
            let ok = match strength {
                Strength::A => a + 1 < b as i64,
                Strength::B => 2 * a + 1 < b as i64,
            };
            if !ok {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn conjecture5_check(series: &TruncatedTSeries, strength: Strength) -> Result<bool> {
    Ok(conjecture5_violation(series, strength)?.is_none())
}
