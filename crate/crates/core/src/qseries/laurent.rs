//! Laurent polynomials in `q` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A finite sum `Σ c_a q^a` with `a ∈ ℤ` and `c_a ∈ ℚ`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentQPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentQPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c · q^exp`.
    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn q_power(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// Builds from `(exponent, integer coefficient)` pairs, summing repeats.
    pub fn from_int_terms<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent present, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent present, `None` for the zero polynomial.
    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// The substitution `q ↦ q^e`. `e = 0` collapses everything onto the constant term.
    pub fn substitute_power(&self, e: i64) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            out.add_term(a * e, c.clone());
        }
        out
    }

    /// `Some((exp, c))` when the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Inverse in the Laurent ring; only monomials are units.
    pub fn inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(-e, c.recip()))
    }

    /// Evaluates at a rational value of `q` (nonzero when negative exponents occur).
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let pw = if *e >= 0 {
                num_traits::pow(q.clone(), *e as usize)
            } else {
                num_traits::pow(q.recip(), (-*e) as usize)
            };
            acc += c * pw;
        }
        acc
    }

    pub fn eval_int(&self, q: i64) -> BigRational {
        self.eval(&BigRational::from_integer(q.into()))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Integer coefficient at `exp`, if it is integral and fits in `i64`.
    pub fn int_coeff(&self, exp: i64) -> Option<i64> {
        let c = self.coeff(exp);
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }

    /// The compact `a:c;a:c` encoding used in CSV exports.
    pub fn to_pairs_string(&self) -> String {
        self.terms
            .iter()
            .map(|(e, c)| format!("{e}:{}", rational_to_string(c)))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_pairs_string(s: &str) -> Result<Self, String> {
        let mut p = Self::zero();
        for part in s.split(';').filter(|x| !x.trim().is_empty()) {
            let (e, c) = part
                .split_once(':')
                .ok_or_else(|| format!("bad term {part:?}"))?;
            let e: i64 = e.trim().parse().map_err(|_| format!("bad exponent {e:?}"))?;
            p.add_term(e, parse_rational(c)?);
        }
        Ok(p)
    }
}

pub fn rational_to_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("bad rational {s:?}");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for LaurentQPoly {
    /// Ascending powers: `3 + q`, `2 - q^2`, `q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                k => format!("q^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{}", rational_to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}{mono}", rational_to_string(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentQPoly({self})")
    }
}

impl<'a> Add<&'a LaurentQPoly> for &LaurentQPoly {
    type Output = LaurentQPoly;
    fn add(self, rhs: &'a LaurentQPoly) -> LaurentQPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentQPoly {
    type Output = LaurentQPoly;
    fn add(mut self, rhs: LaurentQPoly) -> LaurentQPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a LaurentQPoly> for LaurentQPoly {
    fn add_assign(&mut self, rhs: &'a LaurentQPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a LaurentQPoly> for LaurentQPoly {
    fn sub_assign(&mut self, rhs: &'a LaurentQPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentQPoly> for &LaurentQPoly {
    type Output = LaurentQPoly;
    fn sub(self, rhs: &'a LaurentQPoly) -> LaurentQPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentQPoly {
    type Output = LaurentQPoly;
    fn sub(mut self, rhs: LaurentQPoly) -> LaurentQPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentQPoly {
    type Output = LaurentQPoly;
    fn neg(self) -> LaurentQPoly {
        LaurentQPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentQPoly {
    type Output = LaurentQPoly;
    fn neg(self) -> LaurentQPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentQPoly> for &LaurentQPoly {
    type Output = LaurentQPoly;
    fn mul(self, rhs: &'a LaurentQPoly) -> LaurentQPoly {
        let mut out = LaurentQPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentQPoly {
    type Output = LaurentQPoly;
    fn mul(self, rhs: LaurentQPoly) -> LaurentQPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentQPoly {
        LaurentQPoly::from_int_terms(terms.iter().copied())
    }

    #[test]
    fn no_zero_coefficients_survive() {
        let a = p(&[(0, 1), (1, 2)]);
        let b = p(&[(1, -2)]);
        let s = &a + &b;
        assert_eq!(s, LaurentQPoly::one());
        assert_eq!(s.len(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_and_substitution() {
        // (1 - q)(1 + q) = 1 - q^2
        let prod = &p(&[(0, 1), (1, -1)]) * &p(&[(0, 1), (1, 1)]);
        assert_eq!(prod, p(&[(0, 1), (2, -1)]));
        // q ↦ q^-2 then shift by q^3
        let s = p(&[(0, 1), (1, 1)]).substitute_power(-2).shift(3);
        assert_eq!(s, p(&[(3, 1), (1, 1)]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[(0, 3), (1, 1)]).to_string(), "3 + q");
        assert_eq!(p(&[(1, -1), (2, 4)]).to_string(), "-q + 4q^2");
        assert_eq!(LaurentQPoly::zero().to_string(), "0");
    }

    #[test]
    fn pairs_roundtrip() {
        let a = p(&[(-1, 2), (0, 3), (5, -7)]);
        let s = a.to_pairs_string();
        assert_eq!(s, "-1:2;0:3;5:-7");
        assert_eq!(LaurentQPoly::from_pairs_string(&s).unwrap(), a);
    }

    #[test]
    fn only_monomials_invert() {
        let m = p(&[(3, 2)]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_one());
        assert!(p(&[(0, 1), (1, 1)]).inverse().is_none());
    }
}
