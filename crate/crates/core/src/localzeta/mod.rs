//! Brute-force and Monte-Carlo oracles for the coefficients of `I_d(q, t)`.
//!
//! The valuation of `Δ(v)` depends only on `v mod t^{b+1}`, so the density of
//! `{v : val Δ(v) = b}` in `V_d(O)` equals the proportion of such vectors in
//! `V_d(F_p[t]/t^{b+1})`. Dividing by `μ_G` and scaling by `p^b` recovers the
//! weighted orbit count, which should equal the `t^b` coefficient of `I_d(p, t)`.

pub mod compare;
pub mod count;
pub mod mc;
pub mod measure;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use compare::{compare_local, compare_row, predicted_coefficient, CompareRow, McPlan};
pub use count::{valuation_histogram, ValuationHistogram, DEFAULT_BUDGET};
pub use measure::{etale_weighted_count, mu_g, space_dim};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMode {
    Exact,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityResult {
    pub d: u32,
    pub p: u32,
    pub b: u32,
    pub mode: DensityMode,
    /// Vectors (exact) or samples (Monte-Carlo) with valuation exactly `b`.
    pub count: u128,
    /// `p^{dim·(b+1)}` (exact) or the number of samples.
    pub total: u128,
    /// Full valuation histogram over `F_p[t]/t^{b+1}` (exact mode only).
    pub histogram: Option<Vec<u128>>,
    pub seed: Option<u64>,
}

/// A recovered coefficient: exact, or an estimate with its standard error.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(BigRational),
    Estimate { value: f64, std_error: f64 },
}

impl DensityResult {
    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.count), BigInt::from(self.total))
    }

    /// `sqrt(ρ(1 − ρ)/n)` for Monte-Carlo results.
    pub fn std_error(&self) -> Option<f64> {
        (self.mode == DensityMode::MonteCarlo).then(|| {
            let rho = self.count as f64 / self.total as f64;
            (rho * (1.0 - rho) / self.total as f64).sqrt()
        })
    }
}

/// Exhaustive count over `V_d(F_p[t]/t^{b+1})`.
pub fn density_exact(d: u32, p: u32, b: u32, budget: u128) -> Result<DensityResult> {
    let hist = valuation_histogram(d, p, b as usize + 1, budget)?;
    Ok(DensityResult {
        d,
        p,
        b,
        mode: DensityMode::Exact,
        count: hist.counts[b as usize],
        total: hist.total(),
        histogram: Some(hist.counts),
        seed: None,
    })
}

pub fn density_mc(d: u32, p: u32, b: u32, samples: u64, seed: u64) -> Result<DensityResult> {
    let hits = mc::valuation_hits(d, p, b as usize, samples, seed)?;
    Ok(DensityResult {
        d,
        p,
        b,
        mode: DensityMode::MonteCarlo,
        count: hits as u128,
        total: samples as u128,
        histogram: None,
        seed: Some(seed),
    })
}

/// `p^b · density / μ_G`.
pub fn to_coefficient(r: &DensityResult) -> Result<Coefficient> {
    let scale = BigRational::from_integer(BigInt::from(r.p).pow(r.b)) / mu_g(r.d, r.p)?;
    let value = r.density() * &scale;
    Ok(match r.mode {
        DensityMode::Exact => Coefficient::Exact(value),
        DensityMode::MonteCarlo => {
            let s = scale.to_f64().unwrap_or(f64::NAN);
            Coefficient::Estimate {
                value: value.to_f64().unwrap_or(f64::NAN),
                std_error: r.std_error().unwrap_or(0.0) * s,
            }
        }
    })
}
