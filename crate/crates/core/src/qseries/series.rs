//! Polynomials and truncated power series in `t` over [`LaurentQPoly`].

use super::laurent::LaurentQPoly;
use super::SubstitutionSpec;

/// A polynomial `Σ_b P_b(q) t^b`. Trailing zero coefficients are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QTPoly {
    coeffs: Vec<LaurentQPoly>,
}

impl QTPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![LaurentQPoly::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<LaurentQPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Builds from `(q exponent, t exponent, integer coefficient)` triples.
    pub fn from_terms<I: IntoIterator<Item = (i64, usize, i64)>>(it: I) -> Self {
        let mut coeffs: Vec<LaurentQPoly> = Vec::new();
        for (a, b, c) in it {
            if coeffs.len() <= b {
                coeffs.resize(b + 1, LaurentQPoly::zero());
            }
            coeffs[b].add_term(a, num_rational::BigRational::from_integer(c.into()));
        }
        Self::from_coeffs(coeffs)
    }

    /// `1 − q^a t^k`.
    pub fn binomial(a: i64, k: usize) -> Self {
        Self::from_terms([(0, 0, 1), (a, k, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for zero.
    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, b: usize) -> LaurentQPoly {
        self.coeffs.get(b).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[LaurentQPoly] {
        &self.coeffs
    }

    pub fn mul(&self, other: &QTPoly) -> QTPoly {
        if self.is_zero() || other.is_zero() {
            return QTPoly::zero();
        }
        let mut out = vec![LaurentQPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        QTPoly::from_coeffs(out)
    }

    /// Multiplies every coefficient by `q^k`.
    pub fn shift_q(&self, k: i64) -> QTPoly {
        QTPoly::from_coeffs(self.coeffs.iter().map(|c| c.shift(k)).collect())
    }

    /// `(q, t) ↦ (q^e, q^f t)`.
    pub fn substitute(&self, s: SubstitutionSpec) -> QTPoly {
        QTPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(b, c)| c.substitute_power(s.q_exponent).shift(s.t_q_shift * b as i64))
                .collect(),
        )
    }

    /// Smallest q-exponent among all coefficients.
    pub fn min_q_exponent(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.min_exponent()).min()
    }

    /// Iterates nonzero monomials as `(q exponent, t exponent, coefficient)`.
    pub fn monomials(&self) -> impl Iterator<Item = (i64, usize, &num_rational::BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(b, c)| c.terms().map(move |(a, v)| (a, b, v)))
    }
}

/// Power series in `t` known through `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedTSeries {
    coeffs: Vec<LaurentQPoly>,
}

impl TruncatedTSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![LaurentQPoly::zero(); order + 1],
        }
    }

    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<LaurentQPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, LaurentQPoly::zero());
        Self { coeffs }
    }

    pub fn from_poly(p: &QTPoly, order: usize) -> Self {
        Self::from_coeffs(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, b: usize) -> &LaurentQPoly {
        &self.coeffs[b]
    }

    pub fn coeffs(&self) -> &[LaurentQPoly] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, b: usize) -> &mut LaurentQPoly {
        &mut self.coeffs[b]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn add(&self, other: &TruncatedTSeries) -> TruncatedTSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|b| &self.coeffs[b] + &other.coeffs[b])
            .collect();
        Self { coeffs }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &TruncatedTSeries) -> TruncatedTSeries {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if !other.coeffs[j].is_zero() {
                    out.coeffs[i + j] += &(&self.coeffs[i] * &other.coeffs[j]);
                }
            }
        }
        out
    }

    /// Multiplies by a polynomial in `t`, keeping this series' order.
    pub fn mul_poly(&self, p: &QTPoly) -> TruncatedTSeries {
        self.mul(&TruncatedTSeries::from_poly(p, self.order()))
    }

    /// Coefficientwise `(q, t) ↦ (q^e, q^f t)`.
    pub fn substitute(&self, s: SubstitutionSpec) -> TruncatedTSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(b, c)| c.substitute_power(s.q_exponent).shift(s.t_q_shift * b as i64))
            .collect();
        Self { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_product() {
        let p = QTPoly::binomial(0, 1).mul(&QTPoly::from_terms([(0, 0, 1), (0, 1, 1)]));
        assert_eq!(p, QTPoly::from_terms([(0, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn truncation_is_consistent() {
        let a = TruncatedTSeries::from_poly(&QTPoly::from_terms([(0, 0, 1), (1, 1, 1), (0, 3, 2)]), 5);
        let b = TruncatedTSeries::from_poly(&QTPoly::from_terms([(0, 0, 1), (0, 2, -1)]), 5);
        let full = a.mul(&b);
        let low = a.truncate(3).mul(&b.truncate(3));
        for k in 0..=3 {
            assert_eq!(full.coeff(k), low.coeff(k));
        }
    }
}
