//! Haar-measure constants and the weighted count of étale algebras.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `(a) = 1 − p^{−a}`.
fn paren(p: u32, a: u32) -> BigRational {
    BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(p).pow(a))
}

/// Volume of `G_d(O)`: `(1)(2)` for `d = 3` and `(1)(2)²(3)` for `d = 4`.
pub fn mu_g(d: u32, p: u32) -> Result<BigRational> {
    match d {
        3 => Ok(paren(p, 1) * paren(p, 2)),
        4 => Ok(paren(p, 1) * paren(p, 2) * paren(p, 2) * paren(p, 3)),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// Dimension of `V_d`: 4 for binary cubics, 12 for pairs of ternary quadratics.
pub fn space_dim(d: u32) -> Result<u32> {
    match d {
        3 => Ok(4),
        4 => Ok(12),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// `Σ_{λ ⊢ d} 1/z_λ` with `z_λ = Π_e e^{m_e} m_e!`.
pub fn etale_weighted_count(d: u32) -> BigRational {
    let mut total = BigRational::zero();
    let mut parts = Vec::new();
    partitions(d, d, &mut parts, &mut |lambda| {
        total += BigRational::new(BigInt::one(), z_lambda(lambda));
    });
    total
}

fn z_lambda(lambda: &[u32]) -> BigInt {
    let mut z = BigInt::one();
    let mut i = 0;
    while i < lambda.len() {
        let e = lambda[i];
        let m = lambda[i..].iter().take_while(|&&x| x == e).count();
        z *= BigInt::from(e).pow(m as u32);
        z *= (1..=m).fold(BigInt::one(), |acc, k| acc * k);
        i += m;
    }
    z
}

/// Calls `f` on every partition of `n` into parts of size at most `max`, parts nonincreasing.
fn partitions(n: u32, max: u32, parts: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if n == 0 {
        f(parts);
        return;
    }
    for k in (1..=max.min(n)).rev() {
        parts.push(k);
        partitions(n - k, k, parts, f);
        parts.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn measure_constants() {
        assert_eq!(mu_g(3, 5).unwrap(), q(96, 125));
        assert_eq!(mu_g(4, 5).unwrap(), q(4, 5) * q(24, 25) * q(24, 25) * q(124, 125));
        assert!(mu_g(5, 5).is_err());
    }

    #[test]
    fn partition_sums() {
        // d = 3: 1/6 + 1/2 + 1/3
        assert_eq!(z_lambda(&[1, 1, 1]), 6.into());
        assert_eq!(z_lambda(&[2, 1]), 2.into());
        assert_eq!(z_lambda(&[3]), 3.into());
        assert_eq!(etale_weighted_count(1), BigRational::one());
        assert_eq!(etale_weighted_count(3), BigRational::one());
    }
}
