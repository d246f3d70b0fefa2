//! Rational functions in `(q, t)` and their expansion as `t`-series.

use num_rational::BigRational;

use super::series::{QTPoly, TruncatedTSeries};
use super::SubstitutionSpec;
use crate::error::{Error, Result};

/// One denominator factor `1 − q^a t^k` with `k > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DenFactor {
    pub q_exp: i64,
    pub t_exp: usize,
}

impl DenFactor {
    pub fn new(q_exp: i64, t_exp: usize) -> Self {
        assert!(t_exp > 0, "denominator factor needs positive t-degree");
        Self { q_exp, t_exp }
    }

    pub fn poly(&self) -> QTPoly {
        QTPoly::binomial(self.q_exp, self.t_exp)
    }
}

/// `numerator / denominator`. When the denominator is known in factored form
/// `q^scale · Π (1 − q^a t^k)` the factors are kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalQT {
    numerator: QTPoly,
    denominator: QTPoly,
    factored: Option<(i64, Vec<DenFactor>)>,
}

impl RationalQT {
    /// General constructor; fails if the denominator's `t^0` coefficient is not a unit.
    pub fn new(numerator: QTPoly, denominator: QTPoly) -> Result<Self> {
        let r = Self {
            numerator,
            denominator,
            factored: None,
        };
        r.check_constant_term()?;
        Ok(r)
    }

    pub fn from_factors(numerator: QTPoly, factors: Vec<DenFactor>) -> Self {
        let denominator = factors
            .iter()
            .fold(QTPoly::one(), |acc, f| acc.mul(&f.poly()));
        Self {
            numerator,
            denominator,
            factored: Some((0, factors)),
        }
    }

    fn check_constant_term(&self) -> Result<()> {
        let c0 = self.denominator.coeff(0);
        if c0.inverse().is_none() {
            return Err(Error::NonInvertibleConstant(c0.to_string()));
        }
        Ok(())
    }

    pub fn numerator(&self) -> &QTPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &QTPoly {
        &self.denominator
    }

    /// `(scale, factors)` with denominator `q^scale · Π (1 − q^a t^k)`, when known.
    pub fn factors(&self) -> Option<(i64, &[DenFactor])> {
        self.factored.as_ref().map(|(s, f)| (*s, f.as_slice()))
    }

    /// Applies `(q, t) ↦ (q^e, q^f t)` and clears negative q-powers with a common factor.
    pub fn substitute(&self, s: SubstitutionSpec) -> RationalQT {
        let num = self.numerator.substitute(s);
        let den = self.denominator.substitute(s);
        let low = num
            .min_q_exponent()
            .into_iter()
            .chain(den.min_q_exponent())
            .min()
            .unwrap_or(0);
        let lift = (-low).max(0);
        let factored = self.factored.as_ref().and_then(|(scale, fs)| {
            let moved: Vec<DenFactor> = fs
                .iter()
                .map(|f| {
                    DenFactor::new(s.q_exponent * f.q_exp + s.t_q_shift * f.t_exp as i64, f.t_exp)
                })
                .collect();
            // a factor 1 − q^a t^k with a < 0 is no longer of binomial shape after clearing
            if moved.iter().any(|f| f.q_exp < 0) {
                None
            } else {
                Some((scale * s.q_exponent + lift, moved))
            }
        });
        RationalQT {
            numerator: num.shift_q(lift),
            denominator: den.shift_q(lift),
            factored,
        }
    }

    /// Expands as a power series in `t` through `t^order`.
    pub fn expand(&self, order: usize) -> TruncatedTSeries {
        match &self.factored {
            Some((scale, fs)) => expand_factored(&self.numerator, *scale, fs, order),
            None => self.expand_by_division(order),
        }
    }

    /// Expansion by long division against the full denominator polynomial.
    pub fn expand_by_division(&self, order: usize) -> TruncatedTSeries {
        let den = self.denominator.coeffs();
        let inv0 = den[0]
            .inverse()
            .expect("constructor guarantees an invertible constant term");
        let mut s = TruncatedTSeries::zero(order);
        for b in 0..=order {
            let mut acc = self.numerator.coeff(b);
            for (k, dk) in den.iter().enumerate().skip(1).take(b) {
                if !dk.is_zero() {
                    acc -= &(dk * s.coeff(b - k));
                }
            }
            *s.coeff_mut(b) = &acc * &inv0;
        }
        s
    }
}

fn expand_factored(num: &QTPoly, scale: i64, fs: &[DenFactor], order: usize) -> TruncatedTSeries {
    let mut s = TruncatedTSeries::from_poly(num, order);
    for f in fs {
        // multiply in place by 1/(1 − q^a t^k): ascending b picks up the whole geometric tail
        for b in f.t_exp..=order {
            let add = s.coeff(b - f.t_exp).shift(f.q_exp);
            *s.coeff_mut(b) += &add;
        }
    }
    if scale != 0 {
        for b in 0..=order {
            let c = s.coeff(b).shift(-scale);
            *s.coeff_mut(b) = c;
        }
    }
    s
}

/// `I_d(q, t)` for `d ∈ {3, 4}`.
pub fn igusa_rational(d: u32) -> Result<RationalQT> {
    match d {
        3 => Ok(RationalQT::from_factors(
            QTPoly::from_terms((0..=4).map(|b| (0, b, 1))),
            vec![DenFactor::new(0, 2), DenFactor::new(1, 6)],
        )),
        4 => Ok(RationalQT::from_factors(
            quartic_numerator(),
            vec![
                DenFactor::new(0, 1),
                DenFactor::new(0, 2),
                DenFactor::new(1, 6),
                DenFactor::new(2, 8),
                DenFactor::new(3, 12),
            ],
        )),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// `f(q, t) = 1 + t² + t³ + t⁴ − 2t⁵ + 2qt⁶ + (q − 1)t⁷ + qt⁸ − qt⁹ + (q − 1)qt¹⁰
///  − 2qt¹¹ + 2q²t¹² − q²t¹³ − q²t¹⁴ − q²t¹⁵ − q²t¹⁷`.
fn quartic_numerator() -> QTPoly {
    QTPoly::from_terms([
        (0, 0, 1),
        (0, 2, 1),
        (0, 3, 1),
        (0, 4, 1),
        (0, 5, -2),
        (1, 6, 2),
        (1, 7, 1),
        (0, 7, -1),
        (1, 8, 1),
        (1, 9, -1),
        (2, 10, 1),
        (1, 10, -1),
        (1, 11, -2),
        (2, 12, 2),
        (2, 13, -1),
        (2, 14, -1),
        (2, 15, -1),
        (2, 17, -1),
    ])
}

/// Evaluates every coefficient of a `t`-series at a rational `q`.
pub fn eval_series(s: &TruncatedTSeries, q: &BigRational) -> Vec<BigRational> {
    s.coeffs().iter().map(|c| c.eval(q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_and_division_expansions_agree() {
        for d in [3, 4] {
            let r = igusa_rational(d).unwrap();
            let plain = RationalQT::new(r.numerator().clone(), r.denominator().clone()).unwrap();
            assert_eq!(r.expand(40), plain.expand_by_division(40));
            for s in [SubstitutionSpec::GLOBAL, SubstitutionSpec::COHOMOLOGY] {
                let rs = r.substitute(s);
                let plain = RationalQT::new(rs.numerator().clone(), rs.denominator().clone()).unwrap();
                assert_eq!(rs.expand(30), plain.expand_by_division(30));
            }
        }
    }

    #[test]
    fn zero_constant_term_rejected() {
        let err = RationalQT::new(QTPoly::one(), QTPoly::from_terms([(0, 1, 1)]));
        assert!(matches!(err, Err(Error::NonInvertibleConstant(_))));
    }

    #[test]
    fn degree_five_is_unsupported() {
        assert!(matches!(igusa_rational(5), Err(Error::UnsupportedDegree(5))));
    }
}
