//! Small commutative coefficient rings: `F_p` and `F_p[t]/t^N`.

use std::fmt::Debug;

use crate::error::{Error, Result};

/// Longest truncation supported by [`TruncRing`].
pub const MAX_TRUNC: usize = 8;

/// Arithmetic in a commutative ring of characteristic `p`.
pub trait Ring: Sync + Send {
    type Elem: Copy + PartialEq + Eq + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn neg(&self, x: Self::Elem) -> Self::Elem;
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn inv(&self, x: Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, x: Self::Elem) -> bool;
    /// A uniformly random element.
    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn sub(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem {
        self.add(x, self.neg(y))
    }

    fn is_unit(&self, x: Self::Elem) -> bool {
        self.inv(x).is_some()
    }

    fn scale(&self, c: i64, x: Self::Elem) -> Self::Elem {
        self.mul(self.from_i64(c), x)
    }

    fn pow(&self, x: Self::Elem, e: u32) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(acc, x))
    }
}

/// Checks that `p` is a prime coprime to 6 and small enough that `p² + p` fits in `u32`.
pub fn check_prime(p: u32) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0);
    if !prime || p == 2 || p == 3 || p >= 1 << 15 {
        return Err(Error::Precondition(format!(
            "p = {p} must be a prime coprime to 6 below 32768"
        )));
    }
    Ok(())
}

fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

fn inv_mod(x: u32, p: u32) -> Option<u32> {
    if x % p == 0 {
        return None;
    }
    // Fermat: x^(p-2)
    let (mut base, mut e, mut acc) = (x as u64 % p as u64, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    Some(acc as u32)
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p })
    }
}

impl Ring for Fp {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn zero(&self) -> u32 {
        0
    }
    fn from_i64(&self, v: i64) -> u32 {
        reduce(v, self.p)
    }
    fn add(&self, x: u32, y: u32) -> u32 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }
    fn mul(&self, x: u32, y: u32) -> u32 {
        x * y % self.p
    }
    fn inv(&self, x: u32) -> Option<u32> {
        inv_mod(x, self.p)
    }
    fn is_zero(&self, x: u32) -> bool {
        x == 0
    }
    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> u32 {
        rng.gen_range(0..self.p)
    }
}

/// An element of `F_p[t]/t^N`: coefficients of `t^0 … t^{N−1}`, unused slots zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Trunc(pub [u32; MAX_TRUNC]);

/// The truncated power series ring `F_p[t]/t^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncRing {
    p: u32,
    n: usize,
}

impl TruncRing {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        check_prime(p)?;
        if n == 0 || n > MAX_TRUNC {
            return Err(Error::Precondition(format!(
                "truncation order N = {n} must lie in 1..={MAX_TRUNC}"
            )));
        }
        Ok(Self { p, n })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Builds an element from its low coefficients; excess entries are ignored.
    pub fn elem(&self, coeffs: &[i64]) -> Trunc {
        let mut out = [0u32; MAX_TRUNC];
        for (slot, &c) in out.iter_mut().zip(coeffs).take(self.n) {
            *slot = reduce(c, self.p);
        }
        Trunc(out)
    }

    /// `t^k`, zero when `k ≥ N`.
    pub fn t_power(&self, k: usize) -> Trunc {
        let mut out = [0u32; MAX_TRUNC];
        if k < self.n {
            out[k] = 1;
        }
        Trunc(out)
    }

    /// Index of the first nonzero coefficient; `None` stands for "≥ N" (the zero element).
    pub fn valuation(&self, x: Trunc) -> Option<usize> {
        x.0[..self.n].iter().position(|&c| c != 0)
    }
}

impl Ring for TruncRing {
    type Elem = Trunc;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn zero(&self) -> Trunc {
        Trunc::default()
    }
    fn from_i64(&self, v: i64) -> Trunc {
        self.elem(&[v])
    }
    fn add(&self, x: Trunc, y: Trunc) -> Trunc {
        let mut out = [0u32; MAX_TRUNC];
        for i in 0..self.n {
            let s = x.0[i] + y.0[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
        Trunc(out)
    }
    fn neg(&self, x: Trunc) -> Trunc {
        let mut out = [0u32; MAX_TRUNC];
        for i in 0..self.n {
            out[i] = if x.0[i] == 0 { 0 } else { self.p - x.0[i] };
        }
        Trunc(out)
    }
    fn mul(&self, x: Trunc, y: Trunc) -> Trunc {
        let mut out = [0u32; MAX_TRUNC];
        for i in 0..self.n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..self.n - i {
                out[i + j] = (out[i + j] + x.0[i] * y.0[j]) % self.p;
            }
        }
        Trunc(out)
    }
    fn inv(&self, x: Trunc) -> Option<Trunc> {
        let c0 = inv_mod(x.0[0], self.p)?;
        // y = c0 · Σ (1 − c0 x)^k, computed coefficientwise
        let mut y = [0u32; MAX_TRUNC];
        y[0] = c0;
        for k in 1..self.n {
            let mut s = 0u64;
            for i in 1..=k {
                s += x.0[i] as u64 * y[k - i] as u64;
            }
            let s = (s % self.p as u64) as u32;
            y[k] = self.mul_scalar(self.neg_scalar(s), c0);
        }
        Some(Trunc(y))
    }
    fn is_zero(&self, x: Trunc) -> bool {
        x.0[..self.n].iter().all(|&c| c == 0)
    }
    fn sample<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Trunc {
        let mut out = [0u32; MAX_TRUNC];
        for slot in out.iter_mut().take(self.n) {
            *slot = rng.gen_range(0..self.p);
        }
        Trunc(out)
    }
}

impl TruncRing {
    fn mul_scalar(&self, x: u32, y: u32) -> u32 {
        x * y % self.p
    }
    fn neg_scalar(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }
}

/// Description of a coefficient ring as accepted on the command line: `fp:P` or `trunc:P:N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffRing {
    Prime(u32),
    Truncated { p: u32, n: usize },
}

impl std::str::FromStr for CoeffRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| x.parse::<u64>().map_err(|_| Error::Parse(format!("bad ring spec {s:?}")));
        let ring = match parts.as_slice() {
            ["fp", p] => CoeffRing::Prime(num(p)? as u32),
            ["trunc", p, n] => CoeffRing::Truncated {
                p: num(p)? as u32,
                n: num(n)? as usize,
            },
            _ => return Err(Error::Parse(format!("ring must be fp:P or trunc:P:N, got {s:?}"))),
        };
        check_prime(ring.p())?;
        Ok(ring)
    }
}

impl CoeffRing {
    pub fn p(&self) -> u32 {
        match *self {
            CoeffRing::Prime(p) | CoeffRing::Truncated { p, .. } => p,
        }
    }

    /// Truncation order (1 for fields).
    pub fn order(&self) -> usize {
        match *self {
            CoeffRing::Prime(_) => 1,
            CoeffRing::Truncated { n, .. } => n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_primes() {
        for p in [2, 3, 9, 1, 0, 65537, 32771] {
            assert!(check_prime(p).is_err(), "{p}");
        }
        for p in [5, 7, 11, 13] {
            assert!(check_prime(p).is_ok());
        }
    }

    #[test]
    fn truncated_inverse() {
        let r = TruncRing::new(7, 4).unwrap();
        let x = r.elem(&[3, 5, 0, 6]);
        let y = r.inv(x).unwrap();
        assert_eq!(r.mul(x, y), r.one());
        assert!(r.inv(r.elem(&[0, 1])).is_none());
    }

    #[test]
    fn valuations() {
        let r = TruncRing::new(5, 4).unwrap();
        assert_eq!(r.valuation(r.t_power(2)), Some(2));
        assert_eq!(r.valuation(r.zero()), None);
        assert_eq!(r.valuation(r.elem(&[3, 1])), Some(0));
        assert_eq!(r.valuation(r.mul(r.t_power(2), r.t_power(2))), None);
    }

    #[test]
    fn ring_spec_parsing() {
        assert_eq!("fp:5".parse::<CoeffRing>().unwrap(), CoeffRing::Prime(5));
        assert_eq!(
            "trunc:7:3".parse::<CoeffRing>().unwrap(),
            CoeffRing::Truncated { p: 7, n: 3 }
        );
        assert!("fp:6".parse::<CoeffRing>().is_err());
    }
}
