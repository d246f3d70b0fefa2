//! Quasi-polynomial structure of the global counts.
//!
//! Every denominator factor `1 − q^a t^k` divides `1 − q^{aP/k} t^P` once `k | P`, so the
//! coefficients in a fixed residue class `b ≡ r (mod P)` satisfy a constant-coefficient
//! recurrence in `k = (b − r)/P`. Its characteristic roots are the powers `q^λ`, and the closed
//! form `N_b = Σ_λ (Σ_e c_{λ,e} k^e) q^{λk}` becomes `Σ_σ poly_σ(b) · q^{σb}` with `σ = λ/P`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::One;
use serde::Serialize;

use super::laurent::LaurentQPoly;
use super::rational::{igusa_rational, RationalQT};
use super::series::{QTPoly, TruncatedTSeries};
use super::SubstitutionSpec;
use crate::error::{Error, Result};

/// Fitted coefficients for one residue class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassFit {
    pub residue: usize,
    /// For each exponent slope `σ`, the coefficients of `b^0, b^1, …` multiplying `q^{σb}`,
    /// as `numerator/denominator` rational functions of `u` with `q = u^L`.
    pub terms: Vec<SlopeTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SlopeTerm {
    pub slope: String,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondaryReport {
    pub period: usize,
    /// `q = u^root_order`.
    pub root_order: i64,
    pub b_max: usize,
    pub slopes: Vec<String>,
    /// Annihilation by the lifted operator is checked from this `b` on.
    pub annihilation_from: usize,
    pub annihilation_failure: Option<usize>,
    pub fit_failure: Option<usize>,
    pub classes: Vec<ClassFit>,
}

impl SecondaryReport {
    pub fn passes(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<usize> {
        match (self.annihilation_failure, self.fit_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Runs the check on the global series of degree `d` (period 24 for `d = 4`, 6 for `d = 3`).
pub fn secondary_term_check(d: u32, b_max: usize) -> Result<SecondaryReport> {
    let period = match d {
        3 => 6,
        4 => 24,
        _ => return Err(Error::UnsupportedDegree(d)),
    };
    let r = igusa_rational(d)?.substitute(SubstitutionSpec::GLOBAL);
    let series = r.expand(b_max);
    secondary_structure(&series, &r, period)
}

/// Checks that `series` has the quasi-polynomial shape predicted by the denominator of `r`.
pub fn secondary_structure(
    series: &TruncatedTSeries,
    r: &RationalQT,
    period: usize,
) -> Result<SecondaryReport> {
    let (_, factors) = r
        .factors()
        .ok_or_else(|| Error::Precondition("denominator must be in factored form".into()))?;
    let mut roots: BTreeMap<i64, usize> = BTreeMap::new();
    for f in factors {
        if period % f.t_exp != 0 {
            return Err(Error::Precondition(format!(
                "period {period} is not a multiple of factor degree {}",
                f.t_exp
            )));
        }
        *roots.entry(f.q_exp * (period / f.t_exp) as i64).or_default() += 1;
    }
    let n: usize = roots.values().sum();
    let b_max = series.order();
    if b_max + 1 < period * (n + 1) {
        return Err(Error::InsufficientOrder {
            have: b_max,
            need: period * (n + 1) - 1,
        });
    }

    let lifted = roots.iter().fold(QTPoly::one(), |acc, (&lam, &m)| {
        (0..m).fold(acc, |acc, _| acc.mul(&QTPoly::binomial(lam, period)))
    });
    let num_deg = r.numerator().t_degree().unwrap_or(0);
    let den_deg = r.denominator().t_degree().unwrap_or(0);
    let annihilation_from = (num_deg + period * n - den_deg + 1).max(period * n);
    let annihilation_failure = (annihilation_from..=b_max).find(|&b| {
        let mut acc = LaurentQPoly::zero();
        for (j, c) in lifted.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * series.coeff(b - j));
            }
        }
        !acc.is_zero()
    });

    let slopes: Vec<Ratio<i64>> = roots
        .keys()
        .map(|&lam| Ratio::new(lam, period as i64))
        .collect();
    let root_order = slopes.iter().fold(1i64, |l, s| l.lcm(s.denom()));

    let basis: Vec<(i64, u32)> = roots
        .iter()
        .flat_map(|(&lam, &m)| (0..m as u32).map(move |e| (lam, e)))
        .collect();
    let mut fit_failure: Option<usize> = None;
    let mut classes = Vec::with_capacity(period);
    for residue in 0..period {
        let seq: Vec<&LaurentQPoly> = (residue..=b_max).step_by(period).map(|b| series.coeff(b)).collect();
        let k_max = seq.len() - 1;
        let fit_ks: Vec<usize> = (k_max + 1 - n..=k_max).collect();
        let matrix: Vec<Vec<LaurentQPoly>> = fit_ks
            .iter()
            .map(|&k| basis.iter().map(|&(lam, e)| basis_value(lam, e, k)).collect())
            .collect();
        let det = determinant(&matrix);
        if det.is_zero() {
            return Err(Error::Precondition("fit matrix is singular".into()));
        }
        let numerators: Vec<LaurentQPoly> = (0..n)
            .map(|col| {
                let mut m = matrix.clone();
                for (row, &k) in fit_ks.iter().enumerate() {
                    m[row][col] = seq[k].clone();
                }
                determinant(&m)
            })
            .collect();
        for (k, s_k) in seq.iter().enumerate() {
            let mut predicted = LaurentQPoly::zero();
            for (j, &(lam, e)) in basis.iter().enumerate() {
                predicted += &(&numerators[j] * &basis_value(lam, e, k));
            }
            if &det * *s_k != predicted {
                let b = residue + period * k;
                fit_failure = Some(fit_failure.map_or(b, |f| f.min(b)));
                break;
            }
        }
        classes.push(ClassFit {
            residue,
            terms: slope_terms(&roots, &basis, &numerators, &det, residue, period, root_order),
        });
    }

    Ok(SecondaryReport {
        period,
        root_order,
        b_max,
        slopes: slopes.iter().map(|s| s.to_string()).collect(),
        annihilation_from,
        annihilation_failure,
        fit_failure,
        classes,
    })
}

/// `k^e q^{λk}`.
fn basis_value(lam: i64, e: u32, k: usize) -> LaurentQPoly {
    let c = BigRational::from_integer(BigInt::from(k).pow(e));
    LaurentQPoly::monomial(lam * k as i64, c)
}

/// Leibniz expansion; the fit matrices are at most a handful of rows.
fn determinant(m: &[Vec<LaurentQPoly>]) -> LaurentQPoly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = LaurentQPoly::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, i: usize, m: &[Vec<LaurentQPoly>], total: &mut LaurentQPoly) {
    let n = perm.len();
    if i == n {
        let mut prod = LaurentQPoly::one();
        for (row, &col) in perm.iter().enumerate() {
            if m[row][col].is_zero() {
                return;
            }
            prod = &prod * &m[row][col];
        }
        if permutation_sign(perm) < 0 {
            *total -= &prod;
        } else {
            *total += &prod;
        }
        return;
    }
    for j in i..n {
        perm.swap(i, j);
        permute(perm, i + 1, m, total);
        perm.swap(i, j);
    }
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Rewrites `Σ_e c_e k^e q^{λk}` with `k = (b − r)/P` as `Σ_j a_j b^j · q^{σb}`, `σ = λ/P`,
/// and renders each `a_j` as a rational function of `u`.
fn slope_terms(
    roots: &BTreeMap<i64, usize>,
    basis: &[(i64, u32)],
    numerators: &[LaurentQPoly],
    det: &LaurentQPoly,
    residue: usize,
    period: usize,
    root_order: i64,
) -> Vec<SlopeTerm> {
    let den_u = det.substitute_power(root_order);
    let mut out = Vec::new();
    for (&lam, &m) in roots {
        let slope = Ratio::new(lam, period as i64);
        // q^{λk} = u^{L σ b} · u^{−L σ r}
        let shift = -(slope * root_order * residue as i64).to_integer();
        let coeffs: Vec<LaurentQPoly> = basis
            .iter()
            .zip(numerators)
            .filter(|((l, _), _)| *l == lam)
            .map(|(_, c)| c.substitute_power(root_order).shift(shift))
            .collect();
        let mut in_b = vec![LaurentQPoly::zero(); m];
        let p = BigRational::from_integer(BigInt::from(period));
        let minus_r = BigRational::from_integer(-BigInt::from(residue));
        for (e, c) in coeffs.iter().enumerate() {
            // ((b − r)/P)^e = Σ_j C(e, j) b^j (−r)^{e−j} / P^e
            for (j, slot) in in_b.iter_mut().enumerate().take(e + 1) {
                let w = BigRational::from_integer(binomial(e, j))
                    * num_traits::pow(minus_r.clone(), e - j)
                    / num_traits::pow(p.clone(), e);
                *slot += &c.scale(&w);
            }
        }
        out.push(SlopeTerm {
            slope: slope.to_string(),
            coefficients: in_b
                .iter()
                .map(|num| render_ratio(num, &den_u))
                .collect(),
        });
    }
    out
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn render_ratio(num: &LaurentQPoly, den: &LaurentQPoly) -> String {
    if num.is_zero() {
        return "0".into();
    }
    let pretty = |p: &LaurentQPoly| p.to_string().replace('q', "u");
    if let Some(inv) = den.inverse() {
        return pretty(&(num * &inv));
    }
    format!("({})/({})", pretty(num), pretty(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_small_matrix() {
        let c = |v: i64| LaurentQPoly::from_int(v);
        let m = vec![vec![c(2), c(1)], vec![c(7), c(4)]];
        assert_eq!(determinant(&m), c(1));
        let m3 = vec![
            vec![c(1), c(2), c(3)],
            vec![c(0), c(1), c(4)],
            vec![c(5), c(6), c(0)],
        ];
        assert_eq!(determinant(&m3), c(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 0), BigInt::from(1));
    }
}
