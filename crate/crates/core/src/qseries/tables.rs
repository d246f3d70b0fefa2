//! Tables extracted from the expansions of `I_d`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use super::rational::{igusa_rational, RationalQT};
use super::series::{QTPoly, TruncatedTSeries};
use super::SubstitutionSpec;
use crate::error::{Error, Result};
use crate::table::BigradedTable;

/// Coefficient of `t^b` is the weighted count of local algebras `N^loc_{d,q,b}`.
pub fn local_table(d: u32, b_max: usize) -> Result<TruncatedTSeries> {
    Ok(igusa_rational(d)?.expand(b_max))
}

/// Coefficient of `t^b` is the weighted count `N_{d,q,b}` of global algebras over `F_q[t]`.
pub fn global_table(d: u32, b_max: usize) -> Result<TruncatedTSeries> {
    Ok(igusa_rational(d)?
        .substitute(SubstitutionSpec::GLOBAL)
        .expand(b_max))
}

/// Expansion of `I_d(q⁻², qt)` to order `b_max`.
pub fn cohomology_series(d: u32, b_max: usize) -> Result<TruncatedTSeries> {
    Ok(igusa_rational(d)?
        .substitute(SubstitutionSpec::COHOMOLOGY)
        .expand(b_max))
}

/// Entry `(a, b)` is the coefficient of `q^a t^b` in `I_d(q⁻², qt)`.
pub fn cohomology_table(d: u32, a_max: u32, b_max: u32) -> Result<BigradedTable> {
    let s = cohomology_series(d, b_max as usize)?;
    let mut table = BigradedTable::new();
    for b in 0..=b_max {
        for (a, c) in s.coeff(b as usize).terms() {
            let v = nonnegative_integer(c).ok_or_else(|| {
                Error::Precondition(format!("coefficient of q^{a} t^{b} is {c}, not a nonnegative integer"))
            })?;
            if a < 0 {
                return Err(Error::Precondition(format!("negative q-power q^{a} at t^{b}")));
            }
            if a as u32 <= a_max {
                table.set(a as u32, b, v);
            }
        }
    }
    Ok(table)
}

/// Betti numbers of the central fiber: entry `i` is the coefficient of `q^{i/2} t^b`
/// in `I_d(q, t)` for even `i` and zero for odd `i`.
pub fn betti_numbers(d: u32, b: usize) -> Result<Vec<i64>> {
    let s = local_table(d, b)?;
    let p = s.coeff(b);
    let deg = p.degree().unwrap_or(0).max(0) as usize;
    let mut out = vec![0i64; 2 * deg + 1];
    for (a, c) in p.terms() {
        let v = c
            .to_integer()
            .to_i64()
            .filter(|_| c.is_integer() && a >= 0)
            .ok_or_else(|| Error::Precondition(format!("coefficient {c} of q^{a} t^{b} is not a count")))?;
        out[2 * a as usize] = v;
    }
    Ok(out)
}

/// Entry `b` is the q-degree of the `t^b` coefficient of `I_d(q, t)`.
pub fn degree_profile(d: u32, b_max: usize) -> Result<Vec<i64>> {
    let s = local_table(d, b_max)?;
    Ok(s.coeffs()
        .iter()
        .map(|c| c.degree().unwrap_or(i64::MIN))
        .collect())
}

/// Slopes `a/k` of the denominator factors `1 − q^a t^k`, together with `0`.
pub fn slopes_of(r: &RationalQT) -> Result<BTreeSet<Ratio<i64>>> {
    let (_, fs) = r
        .factors()
        .ok_or_else(|| Error::Precondition("denominator is not in factored binomial form".into()))?;
    let mut out: BTreeSet<Ratio<i64>> = fs
        .iter()
        .map(|f| Ratio::new(f.q_exp, f.t_exp as i64))
        .collect();
    out.insert(Ratio::zero());
    Ok(out)
}

pub fn denominator_slopes(d: u32) -> Result<BTreeSet<Ratio<i64>>> {
    slopes_of(&igusa_rational(d)?)
}

/// True iff `denominator · series` has no terms in degrees `numerator_degree < b ≤ order`,
/// i.e. the coefficients obey the linear recurrence read off the denominator.
pub fn recurrence_check(
    series: &TruncatedTSeries,
    denominator: &QTPoly,
    numerator_degree: usize,
) -> Result<bool> {
    let den_deg = denominator.t_degree().unwrap_or(0);
    let need = numerator_degree + den_deg;
    if series.order() < need {
        return Err(Error::InsufficientOrder {
            have: series.order(),
            need,
        });
    }
    let prod = series.mul_poly(denominator);
    Ok(((numerator_degree + 1)..=series.order()).all(|b| prod.coeff(b).is_zero()))
}

/// Local-global duality: `N_{d,q,b} = q^b · P_b(q⁻¹)` for all `b ≤ b_max`.
/// Returns the first `b` where it fails.
pub fn duality_failure(d: u32, b_max: usize) -> Result<Option<usize>> {
    let local = local_table(d, b_max)?;
    let global = global_table(d, b_max)?;
    Ok((0..=b_max).find(|&b| {
        let dual = local.coeff(b).substitute_power(-1).shift(b as i64);
        &dual != global.coeff(b)
    }))
}

/// First `(b, q-exponent)` where a coefficient of the series is not a nonnegative integer.
pub fn first_non_count(s: &TruncatedTSeries) -> Option<(usize, i64)> {
    for (b, c) in s.coeffs().iter().enumerate() {
        if let Some((a, _)) = c.terms().find(|(_, v)| nonnegative_integer(v).is_none()) {
            return Some((b, a));
        }
    }
    None
}

fn nonnegative_integer(c: &num_rational::BigRational) -> Option<u64> {
    if c.is_integer() && !c.is_negative() {
        c.to_integer().to_u64()
    } else {
        None
    }
}
