//! Coefficient fields for rank computations: `Q` and `F_p` with `p < 2^62`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait Field: Clone + Debug + Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, x: &Self::E) -> Self::E;
    /// `None` when the denominator vanishes in this field.
    fn from_rational(&self, x: &BigRational) -> Option<Self::E>;
    fn from_i64(&self, x: i64) -> Self::E;
    fn label(&self) -> String;
}

/// Exact rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
    fn from_rational(&self, x: &BigRational) -> Option<BigRational> {
        Some(x.clone())
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn label(&self) -> String {
        "exact".into()
    }
}

/// `F_p` for a prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrime {
    p: u64,
}

impl ModPrime {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < 1 << 62 && is_prime_u64(p), "{p} is not an admissible prime");
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("reduced value fits")
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Two distinct random primes in `[2^61, 2^62)` drawn from `seed`.
pub fn random_prime_pair(seed: u64) -> (ModPrime, ModPrime) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(c) {
            return c;
        }
    };
    let a = draw();
    let b = loop {
        let b = draw();
        if b != a {
            break b;
        }
    };
    (ModPrime::new(a), ModPrime::new(b))
}

impl Field for ModPrime {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mul_mod(*x, *y, self.p)
    }
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }
    fn inv(&self, x: &u64) -> u64 {
        assert!(*x != 0, "inverse of zero");
        pow_mod(*x, self.p - 2, self.p)
    }
    fn from_rational(&self, x: &BigRational) -> Option<u64> {
        let den = self.reduce_big(x.denom());
        if den == 0 {
            return None;
        }
        let num = self.reduce_big(x.numer());
        Some(self.mul(&num, &self.inv(&den)))
    }
    fn from_i64(&self, x: i64) -> u64 {
        if x < 0 {
            self.neg(&(x.unsigned_abs() % self.p))
        } else {
            x as u64 % self.p
        }
    }
    fn label(&self) -> String {
        format!("mod {}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(4611686018427387847));
        assert!(!is_prime_u64(4611686018427387849));
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn rational_reduction() {
        let f = ModPrime::new(101);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.mul(&f.from_rational(&half).unwrap(), &2), 1);
        assert_eq!(f.from_i64(-1), 100);
        let (a, b) = random_prime_pair(1);
        assert_ne!(a, b);
        assert!(a.modulus() >= 1 << 61);
    }
}
