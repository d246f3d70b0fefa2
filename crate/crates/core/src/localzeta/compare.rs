//! Oracle-versus-series comparison tables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{density_exact, density_mc, to_coefficient, Coefficient, DensityResult};
use crate::error::{Error, Result};
use crate::qseries::laurent::rational_to_string;
use crate::qseries::local_table;
use crate::report::Verdict;

/// Monte-Carlo runs to add after the exact range: `(b, samples)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct McPlan {
    pub runs: Vec<(u32, u64)>,
    pub seed: u64,
}

impl McPlan {
    /// Parses `"b=3:1e8,b=4:1e6"`.
    pub fn parse(spec: &str, seed: u64) -> Result<Self> {
        let mut runs = Vec::new();
        for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let bad = || Error::Parse(format!("bad Monte-Carlo plan entry {part:?}"));
            let rest = part.trim().strip_prefix("b=").ok_or_else(bad)?;
            let (b, n) = rest.split_once(':').ok_or_else(bad)?;
            let b: u32 = b.parse().map_err(|_| bad())?;
            let n: f64 = n.parse().map_err(|_| bad())?;
            if !(n.is_finite() && n >= 1.0) {
                return Err(bad());
            }
            runs.push((b, n as u64));
        }
        Ok(Self { runs, seed })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub d: u32,
    pub p: u32,
    pub b: u32,
    pub mode: String,
    pub count: String,
    pub coefficient: String,
    pub predicted: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    pub verdict: Verdict,
}

/// The `t^b` coefficient of `I_d(q, t)` evaluated at `q = p`.
pub fn predicted_coefficient(d: u32, p: u32, b: u32) -> Result<BigRational> {
    let s = local_table(d, b as usize)?;
    Ok(s.coeff(b as usize).eval(&BigRational::from_integer(BigInt::from(p))))
}

/// Compares one density against the series. Exact results must agree exactly; Monte-Carlo
/// results pass when within four standard errors.
pub fn compare_row(r: &DensityResult) -> Result<CompareRow> {
    let predicted = predicted_coefficient(r.d, r.p, r.b)?;
    let (mode, coefficient, std_error, verdict) = match to_coefficient(r)? {
        Coefficient::Exact(c) => ("exact", rational_to_string(&c), None, Verdict::from_bool(c == predicted)),
        Coefficient::Estimate { value, std_error } => {
            let pred = predicted.to_f64().unwrap_or(f64::NAN);
            let ok = (value - pred).abs() <= 4.0 * std_error;
            let verdict = if ok { Verdict::WithinCi } else { Verdict::Mismatch };
            ("montecarlo", format!("{value:.6}"), Some(std_error), verdict)
        }
    };
    Ok(CompareRow {
        d: r.d,
        p: r.p,
        b: r.b,
        mode: mode.into(),
        count: r.count.to_string(),
        coefficient,
        predicted: rational_to_string(&predicted),
        std_error,
        verdict,
    })
}

/// Exact rows for `b ≤ b_exact_max`, then the Monte-Carlo plan. Exact disagreement aborts.
pub fn compare_local(d: u32, p: u32, b_exact_max: Option<u32>, plan: &McPlan, budget: u128) -> Result<Vec<CompareRow>> {
    let mut rows = Vec::new();
    if let Some(top) = b_exact_max {
        for b in 0..=top {
            let row = compare_row(&density_exact(d, p, b, budget)?)?;
            if row.verdict.is_failure() {
                return Err(Error::ExactMismatch {
                    b,
                    computed: row.coefficient,
                    predicted: row.predicted,
                });
            }
            rows.push(row);
        }
    }
    for &(b, samples) in &plan.runs {
        rows.push(compare_row(&density_mc(d, p, b, samples, plan.seed)?)?);
    }
    Ok(rows)
}
