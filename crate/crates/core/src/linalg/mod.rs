//! Sparse rank computations over `Q` or over pairs of large primes.

pub mod field;

use num_rational::BigRational;
use serde::Serialize;
use std::collections::HashMap;

pub use field::{is_prime_u64, random_prime_pair, Field, ModPrime, Rationals};

use crate::error::{Error, Result};

/// Ambient dimension up to which ranks are computed over `Q`.
pub const EXACT_LIMIT: usize = 2000;
/// Ambient dimension up to which modular ranks are attempted.
pub const MODULAR_LIMIT: usize = 50_000;
/// Seed for the default pair of primes.
pub const DEFAULT_PRIME_SEED: u64 = 0x5EED_0F_0DD5;

/// Sorted by column, no zero entries.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `x + c·y` for sorted sparse vectors.
pub fn axpy<F: Field>(f: &F, x: &[(usize, F::E)], c: &F::E, y: &[(usize, F::E)]) -> SparseVec<F::E> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, f.mul(c, &y[j].1)));
            j += 1;
        } else {
            let v = f.add(&x[i].1, &f.mul(c, &y[j].1));
            if !f.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sorted sparse vector from unsorted `(column, value)` pairs, summing duplicates.
pub fn collect_sparse<F: Field>(f: &F, entries: impl IntoIterator<Item = (usize, F::E)>) -> SparseVec<F::E> {
    let mut v: Vec<(usize, F::E)> = entries.into_iter().collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::E> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add(&last.1, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !f.is_zero(x));
    out
}

/// A row-echelon basis grown one vector at a time; rows are keyed by their leading column
/// and normalized so that the leading entry is 1.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: HashMap<usize, SparseVec<F::E>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Self {
            field,
            rows: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Eliminates leading entries until the leading column has no pivot.
    pub fn reduce(&self, mut v: SparseVec<F::E>) -> SparseVec<F::E> {
        while let Some((col, lead)) = v.first().cloned() {
            let Some(row) = self.rows.get(&col) else {
                break;
            };
            v = axpy(&self.field, &v, &self.field.neg(&lead), row);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F::E>) -> bool {
        let v = self.reduce(v);
        let Some((col, lead)) = v.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        let row = v.into_iter().map(|(c, x)| (c, self.field.mul(&inv, &x))).collect();
        self.rows.insert(col, row);
        true
    }

    pub fn contains(&self, v: SparseVec<F::E>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }
}

/// Rank of a batch of vectors. Columns are relabelled so that rarely used columns pivot first,
/// and short rows are inserted first.
pub fn rank_sparse<F: Field>(f: &F, mut vectors: Vec<SparseVec<F::E>>) -> usize {
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    for v in vectors.iter_mut() {
        for e in v.iter_mut() {
            let next = relabel.len();
            e.0 = *relabel.entry(e.0).or_insert(next);
        }
    }
    let mut freq = vec![0usize; relabel.len()];
    for v in &vectors {
        for (c, _) in v {
            freq[*c] += 1;
        }
    }
    let mut cols: Vec<usize> = (0..freq.len()).collect();
    cols.sort_by_key(|&c| (freq[c], c));
    let mut order = vec![0usize; freq.len()];
    for (i, &c) in cols.iter().enumerate() {
        order[c] = i;
    }
    for v in vectors.iter_mut() {
        for e in v.iter_mut() {
            e.0 = order[e.0];
        }
        v.sort_unstable_by_key(|e| e.0);
    }
    vectors.retain(|v| !v.is_empty());
    vectors.sort_by_key(|v| v.len());
    rank_over(f, vectors)
}

pub fn rank_over<F: Field>(f: &F, vectors: impl IntoIterator<Item = SparseVec<F::E>>) -> usize {
    let mut e = Echelon::new(f.clone());
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// How a rank was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum RankMethod {
    Exact,
    /// Certified modulo the choice of the two primes.
    Modular { primes: [u64; 2] },
}

impl std::fmt::Display for RankMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankMethod::Exact => write!(f, "exact"),
            RankMethod::Modular { primes } => {
                write!(f, "certified modulo prime choice ({}, {})", primes[0], primes[1])
            }
        }
    }
}

/// Rank of rational vectors in an ambient space of dimension `ambient`: exact up to
/// [`EXACT_LIMIT`], otherwise over two primes that must agree.
pub fn rank_auto(vectors: &[SparseVec<BigRational>], ambient: usize, prime_seed: u64) -> Result<(usize, RankMethod)> {
    if ambient <= EXACT_LIMIT {
        return Ok((rank_over(&Rationals, vectors.iter().cloned()), RankMethod::Exact));
    }
    if ambient > MODULAR_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "rank computation",
            needed: ambient as u128,
            budget: MODULAR_LIMIT as u128,
            hint: "use rewrite-system dims",
        });
    }
    let (p1, p2) = random_prime_pair(prime_seed);
    let modular = |f: &ModPrime| -> Result<usize> {
        let mut out = Vec::with_capacity(vectors.len());
        for v in vectors {
            let mut w = Vec::with_capacity(v.len());
            for (c, x) in v {
                let y = f.from_rational(x).ok_or_else(|| {
                    Error::Precondition(format!("denominator divisible by {}", f.modulus()))
                })?;
                if y != 0 {
                    w.push((*c, y));
                }
            }
            out.push(w);
        }
        Ok(rank_over(f, out))
    };
    let (r1, r2) = (modular(&p1)?, modular(&p2)?);
    if r1 != r2 {
        return Err(Error::PrimeDisagreement {
            first: (p1.modulus(), r1),
            second: (p2.modulus(), r2),
        });
    }
    Ok((
        r1,
        RankMethod::Modular {
            primes: [p1.modulus(), p2.modulus()],
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn dependent_rows() {
        let rows = vec![
            vec![(0, q(1)), (2, q(2))],
            vec![(1, q(1)), (2, q(1))],
            vec![(0, q(2)), (1, q(3)), (2, q(7))],
        ];
        assert_eq!(rank_over(&Rationals, rows.clone()), 2);
        let (r, m) = rank_auto(&rows, 3, 1).unwrap();
        assert_eq!((r, m), (2, RankMethod::Exact));
        let (r, m) = rank_auto(&rows, 3000, 1).unwrap();
        assert_eq!(r, 2);
        assert!(matches!(m, RankMethod::Modular { .. }));
    }

    #[test]
    fn sparse_helpers() {
        let f = ModPrime::new(7);
        let v = collect_sparse(&f, vec![(3, 2), (1, 5), (3, 5)]);
        assert_eq!(v, vec![(1, 5)]);
        assert_eq!(axpy(&f, &[(0, 1)], &6, &[(0, 1), (2, 1)]), vec![(2, 6)]);
    }
}
