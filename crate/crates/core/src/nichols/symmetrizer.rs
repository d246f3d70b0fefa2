//! `dim B^n` as the dimension of the span of all `n`-fold shuffle products of generators.
//!
//! By associativity that span is `B^{n−1} ⋆ V`, so a basis is grown one degree at a time
//! from products of the previous basis with single letters.

use std::str::FromStr;

use super::braiding::shuffle_words;
use super::tensor::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::linalg::{collect_sparse, random_prime_pair, Echelon, Field, ModPrime, RankMethod, Rationals, SparseVec, EXACT_LIMIT, MODULAR_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RankMode {
    /// Exact up to the exact ambient limit, two primes above it.
    #[default]
    Auto,
    Exact,
    Modular,
}

impl FromStr for RankMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(RankMode::Auto),
            "exact" => Ok(RankMode::Exact),
            "modular" => Ok(RankMode::Modular),
            _ => Err(Error::Parse(format!("rank mode must be auto, exact or modular, got {s:?}"))),
        }
    }
}

fn encode(w: &[u8], m: usize) -> usize {
    w.iter().fold(0, |acc, &x| acc * m + x as usize)
}

fn decode(mut code: usize, n: usize, m: usize) -> Word {
    let mut w = vec![0u8; n];
    for slot in w.iter_mut().rev() {
        *slot = (code % m) as u8;
        code /= m;
    }
    w
}

/// Dimensions of the shuffle span in degrees `0..=n_max`, computed in `f`.
fn span_dims_over<F: Field>(f: &F, alpha: &Alphabet, n_max: usize, ambient_cap: usize) -> Result<Vec<usize>> {
    let m = alpha.size();
    let mut dims = vec![1];
    // spanning vectors kept as originals, with integer coefficients
    let mut basis: Vec<SparseVec<F::E>> = vec![vec![(0, f.one())]];
    for n in 1..=n_max {
        m.checked_pow(n as u32).filter(|&a| a <= ambient_cap).ok_or(Error::BudgetExceeded {
            what: "quantum symmetrizer rank",
            needed: (m as u128).pow(n as u32),
            budget: ambient_cap as u128,
            hint: "use rewrite-system dims",
        })?;
        let mut echelon = Echelon::new(f.clone());
        let mut next = Vec::new();
        for b in &basis {
            for a in 0..m as u8 {
                let mut entries = Vec::new();
                for (code, c) in b {
                    let u = decode(*code, n - 1, m);
                    for (w, s) in shuffle_words(alpha, &u, &[a]) {
                        entries.push((encode(&w, m), f.mul(c, &f.from_i64(s))));
                    }
                }
                let v = collect_sparse(f, entries);
                if echelon.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        dims.push(next.len());
        if next.is_empty() {
            dims.extend(std::iter::repeat(0).take(n_max - n));
            break;
        }
        basis = next;
    }
    Ok(dims)
}

/// `dim` of the span of `v_{i_1} ⋆ ⋯ ⋆ v_{i_n}` for each `n ≤ n_max`, with the method used.
pub fn quantum_symmetrizer_dims(alpha: &Alphabet, n_max: usize, mode: RankMode, prime_seed: u64) -> Result<Vec<(usize, RankMethod)>> {
    let m = alpha.size();
    let exact_up_to = match mode {
        RankMode::Exact => n_max,
        RankMode::Modular => 0,
        RankMode::Auto => (0..=n_max).take_while(|&n| m.pow(n as u32) <= EXACT_LIMIT).last().unwrap_or(0),
    };
    let exact = span_dims_over(&Rationals, alpha, exact_up_to, usize::MAX)?;
    let mut out: Vec<(usize, RankMethod)> = exact.into_iter().map(|d| (d, RankMethod::Exact)).collect();
    if exact_up_to < n_max {
        let (p1, p2) = random_prime_pair(prime_seed);
        let run = |p: &ModPrime| span_dims_over(p, alpha, n_max, MODULAR_LIMIT);
        let (a, b) = (run(&p1)?, run(&p2)?);
        for n in exact_up_to + 1..=n_max {
            if a[n] != b[n] {
                return Err(Error::PrimeDisagreement {
                    first: (p1.modulus(), a[n]),
                    second: (p2.modulus(), b[n]),
                });
            }
            out.push((
                a[n],
                RankMethod::Modular {
                    primes: [p1.modulus(), p2.modulus()],
                },
            ));
        }
    }
    Ok(out)
}

pub fn quantum_symmetrizer_dim(alpha: &Alphabet, n: usize, mode: RankMode, prime_seed: u64) -> Result<(usize, RankMethod)> {
    Ok(quantum_symmetrizer_dims(alpha, n, mode, prime_seed)?.pop().expect("degree 0 present"))
}
