//! Exhaustive valuation histograms of the discriminant over `V_d(F_p[t]/t^N)`.

use rayon::prelude::*;

use super::measure::space_dim;
use crate::error::{Error, Result};
use crate::prehomog::forms::{disc3, disc4, BinaryCubic, TernaryQuadPair};
use crate::prehomog::resolvent_table::{CUBIC_A, CUBIC_B, CUBIC_C, CUBIC_D};
use crate::prehomog::ring::{check_prime, Ring, Trunc, TruncRing};

/// Default cap on the number of enumerated vectors.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Largest ring size for which addition and multiplication tables are precomputed.
const TABLE_LIMIT: usize = 1024;

/// Entry `v < N` counts vectors whose discriminant has valuation exactly `v`;
/// the last entry counts vectors with discriminant `≡ 0 mod t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationHistogram {
    pub d: u32,
    pub p: u32,
    pub n: usize,
    pub counts: Vec<u128>,
}

impl ValuationHistogram {
    fn empty(d: u32, p: u32, n: usize) -> Self {
        Self {
            d,
            p,
            n,
            counts: vec![0; n + 1],
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// Vectors with discriminant of valuation exactly `b`; `None` if `b ≥ N`.
    pub fn exact(&self, b: usize) -> Option<u128> {
        (b < self.n).then(|| self.counts[b])
    }
}

/// Number of vectors in `V_d(F_p[t]/t^N)`, or `None` on overflow.
pub fn ambient_size(d: u32, p: u32, n: usize) -> Result<Option<u128>> {
    let e = space_dim(d)? as usize * n;
    Ok((0..e).try_fold(1u128, |acc, _| acc.checked_mul(p as u128)))
}

/// Enumerates `V_d(F_p[t]/t^N)` and histograms the valuation of the discriminant.
pub fn valuation_histogram(d: u32, p: u32, n: usize, budget: u128) -> Result<ValuationHistogram> {
    check_prime(p)?;
    let size = ambient_size(d, p, n)?;
    let needed = size.unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "exact density enumeration",
            needed,
            budget,
            hint: "use density_mc",
        });
    }
    let ring = TruncRing::new(p, n)?;
    let m = (p as usize).pow(n as u32);
    match d {
        3 if m <= TABLE_LIMIT => Ok(cubic_table_kernel(p, n)),
        3 => Ok(generic_kernel(&ring, 3)),
        4 if n == 1 => Ok(quartic_field_kernel(p)),
        4 => Ok(generic_kernel(&ring, 4)),
        _ => Err(Error::UnsupportedDegree(d)),
    }
}

/// Straightforward odometer over all coordinates using generic ring arithmetic;
/// the first coordinate is split across workers.
pub fn generic_kernel(ring: &TruncRing, d: u32) -> ValuationHistogram {
    let n = ring.order();
    let p = ring.characteristic();
    let elems = all_elements(ring);
    let dim = if d == 3 { 4 } else { 12 };
    elems
        .par_iter()
        .map(|&first| {
            let mut hist = ValuationHistogram::empty(d, p, n);
            let mut idx = vec![0usize; dim - 1];
            loop {
                let mut coords = [ring.zero(); 12];
                coords[0] = first;
                for (slot, &i) in coords[1..dim].iter_mut().zip(&idx) {
                    *slot = elems[i];
                }
                let disc = if d == 3 {
                    disc3(ring, &BinaryCubic::new(coords[0], coords[1], coords[2], coords[3]))
                } else {
                    disc4(ring, &TernaryQuadPair::new(coords))
                };
                hist.counts[ring.valuation(disc).unwrap_or(n)] += 1;
                if !odometer_step(&mut idx, elems.len()) {
                    break;
                }
            }
            hist
        })
        .reduce(|| ValuationHistogram::empty(d, p, n), ValuationHistogram::merge)
}

/// Advances a little-endian odometer; false after the last state.
fn odometer_step(idx: &mut [usize], base: usize) -> bool {
    for i in idx.iter_mut() {
        *i += 1;
        if *i < base {
            return true;
        }
        *i = 0;
    }
    false
}

/// All elements of `F_p[t]/t^N`, element `i` having base-`p` digits of `i` as coefficients.
fn all_elements(ring: &TruncRing) -> Vec<Trunc> {
    let p = ring.characteristic() as usize;
    let m = p.pow(ring.order() as u32);
    (0..m)
        .map(|mut i| {
            let mut c = Trunc::default();
            for k in 0..ring.order() {
                c.0[k] = (i % p) as u32;
                i /= p;
            }
            c
        })
        .collect()
}

fn index_of(x: Trunc, p: u32, n: usize) -> usize {
    (0..n).rev().fold(0usize, |acc, k| acc * p as usize + x.0[k] as usize)
}

/// Binary cubics with table-driven ring arithmetic. For fixed `(a, b, c)` the discriminant
/// is the quadratic `α d² + β d + γ` in the last coordinate.
fn cubic_table_kernel(p: u32, n: usize) -> ValuationHistogram {
    let ring = TruncRing::new(p, n).expect("validated by caller");
    let elems = all_elements(&ring);
    let m = elems.len();
    let mut add = vec![0u16; m * m];
    let mut mul = vec![0u16; m * m];
    for i in 0..m {
        for j in 0..m {
            add[i * m + j] = index_of(ring.add(elems[i], elems[j]), p, n) as u16;
            mul[i * m + j] = index_of(ring.mul(elems[i], elems[j]), p, n) as u16;
        }
    }
    let val: Vec<u8> = elems
        .iter()
        .map(|&x| ring.valuation(x).unwrap_or(n) as u8)
        .collect();
    let sq: Vec<u16> = (0..m).map(|i| mul[i * m + i]).collect();
    let idx = |v: i64| index_of(ring.from_i64(v), p, n);
    let (c_m27, c_18, c_m4) = (idx(-27), idx(18), idx(-4));
    let (add, mul) = (&add, &mul);
    let ad = |x: usize, y: usize| add[x * m + y] as usize;
    let mu = |x: usize, y: usize| mul[x * m + y] as usize;

    (0..m)
        .into_par_iter()
        .map(|a| {
            let mut counts = vec![0u64; n + 1];
            let a2 = sq[a] as usize;
            let alpha = mu(c_m27, a2);
            for b in 0..m {
                let b2 = sq[b] as usize;
                let b3 = mu(b2, b);
                let ab = mu(a, b);
                for c in 0..m {
                    let bc = mu(b, c);
                    let c3 = mu(sq[c] as usize, c);
                    let beta = ad(mu(c_18, mu(ab, c)), mu(c_m4, b3));
                    let gamma = ad(mu(bc, bc), mu(c_m4, mu(a, c3)));
                    let arow = &mul[alpha * m..alpha * m + m];
                    let brow = &mul[beta * m..beta * m + m];
                    for d in 0..m {
                        let disc = ad(ad(arow[sq[d] as usize] as usize, brow[d] as usize), gamma);
                        counts[val[disc] as usize] += 1;
                    }
                }
            }
            let mut h = ValuationHistogram::empty(3, p, n);
            for (slot, c) in h.counts.iter_mut().zip(counts) {
                *slot = c as u128;
            }
            h
        })
        .reduce(|| ValuationHistogram::empty(3, p, n), ValuationHistogram::merge)
}

/// Pairs of ternary quadratic forms over `F_p`. For a fixed first form `A` the resolvent
/// cubic's coefficients are polynomials in `B` of degrees 0, 1, 2, 3; their `A`-dependent
/// weights are computed once and the `B`-loop runs over precomputed monomial columns.
fn quartic_field_kernel(p: u32) -> ValuationHistogram {
    let pu = p as usize;
    let m6 = pu.pow(6);
    let digits = |mut i: usize| {
        let mut out = [0u32; 6];
        for slot in out.iter_mut() {
            *slot = (i % pu) as u32;
            i /= pu;
        }
        out
    };
    let forms: Vec<[u32; 6]> = (0..m6).map(digits).collect();
    // quadratic monomials B_i B_j with i ≤ j (21 of them), stored column-major
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|i| (i..6).map(move |j| (i, j))).collect();
    let lin_cols: Vec<Vec<u32>> = (0..6).map(|i| forms.iter().map(|f| f[i]).collect()).collect();
    let quad_cols: Vec<Vec<u32>> = pairs
        .iter()
        .map(|&(i, j)| forms.iter().map(|f| f[i] * f[j] % p).collect())
        .collect();
    let cubic_d: Vec<u32> = forms
        .iter()
        .map(|b| {
            let mut v = [0i64; 12];
            for i in 0..6 {
                v[6 + i] = b[i] as i64;
            }
            eval_mod(&CUBIC_D, &v, p)
        })
        .collect();

    (0..m6)
        .into_par_iter()
        .map(|ai| {
            let a = forms[ai];
            let mut va = [0i64; 12];
            for i in 0..6 {
                va[i] = a[i] as i64;
            }
            let ca = eval_mod(&CUBIC_A, &va, p) as u64;
            // weights of B_i in the x²y coefficient and of B_iB_j in the xy² coefficient
            let mut wb = [0u64; 6];
            for &(c, i, j, k) in CUBIC_B.iter() {
                let (aa, bi) = split_one_b(i, j, k);
                let w = c * aa.iter().map(|&x| va[x]).product::<i64>();
                wb[bi - 6] = (wb[bi - 6] as i64 + w).rem_euclid(p as i64) as u64;
            }
            let mut wc = vec![0u64; pairs.len()];
            for &(c, i, j, k) in CUBIC_C.iter() {
                let (ai_, b1, b2) = split_two_b(i, j, k);
                let w = c * va[ai_];
                let pos = pairs
                    .iter()
                    .position(|&pr| pr == (b1 - 6, b2 - 6))
                    .expect("monomial present");
                wc[pos] = (wc[pos] as i64 + w).rem_euclid(p as i64) as u64;
            }
            let mut cb = vec![0u64; m6];
            for (i, col) in lin_cols.iter().enumerate() {
                if wb[i] != 0 {
                    for (acc, &x) in cb.iter_mut().zip(col) {
                        *acc += wb[i] * x as u64;
                    }
                }
            }
            let mut cc = vec![0u64; m6];
            for (k, col) in quad_cols.iter().enumerate() {
                if wc[k] != 0 {
                    for (acc, &x) in cc.iter_mut().zip(col) {
                        *acc += wc[k] * x as u64;
                    }
                }
            }
            let pp = p as u64;
            let mut nonzero = 0u64;
            for bi in 0..m6 {
                let b = cb[bi] % pp;
                let c = cc[bi] % pp;
                let d = cubic_d[bi] as u64;
                if disc3_mod(ca, b, c, d, pp) != 0 {
                    nonzero += 1;
                }
            }
            let mut h = ValuationHistogram::empty(4, p, 1);
            h.counts[0] = nonzero as u128;
            h.counts[1] = (m6 as u64 - nonzero) as u128;
            h
        })
        .reduce(|| ValuationHistogram::empty(4, p, 1), ValuationHistogram::merge)
}

/// Splits a monomial with exactly one `B`-index (≥ 6) into its `A`-indices and the `B`-index.
fn split_one_b(i: usize, j: usize, k: usize) -> ([usize; 2], usize) {
    let mut a = Vec::with_capacity(2);
    let mut b = 0;
    for x in [i, j, k] {
        if x >= 6 {
            b = x;
        } else {
            a.push(x);
        }
    }
    ([a[0], a[1]], b)
}

/// Splits a monomial with exactly two `B`-indices into `(A-index, B-index, B-index)`, sorted.
fn split_two_b(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut a = 0;
    let mut b = Vec::with_capacity(2);
    for x in [i, j, k] {
        if x >= 6 {
            b.push(x);
        } else {
            a = x;
        }
    }
    b.sort_unstable();
    (a, b[0], b[1])
}

/// Evaluates one resolvent-cubic coefficient table at integer coordinates, reduced mod `p`.
pub(crate) fn eval_mod(table: &[(i64, usize, usize, usize)], v: &[i64; 12], p: u32) -> u32 {
    let s: i64 = table.iter().map(|&(c, i, j, k)| c * v[i] * v[j] * v[k]).sum();
    s.rem_euclid(p as i64) as u32
}

/// `b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd mod p` for reduced inputs.
pub(crate) fn disc3_mod(a: u64, b: u64, c: u64, d: u64, p: u64) -> u64 {
    let (a, b, c, d, p) = (a as i128, b as i128, c as i128, d as i128, p as i128);
    let v = b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
    v.rem_euclid(p) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_visits_every_state() {
        let mut idx = vec![0usize; 3];
        let mut seen = 1;
        while odometer_step(&mut idx, 4) {
            seen += 1;
        }
        assert_eq!(seen, 64);
        assert_eq!(idx, vec![0, 0, 0]);
    }

    #[test]
    fn cubic_kernels_agree() {
        for (p, n) in [(5, 1), (7, 1), (5, 2)] {
            let ring = TruncRing::new(p, n).unwrap();
            assert_eq!(cubic_table_kernel(p, n), generic_kernel(&ring, 3), "p={p} n={n}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = valuation_histogram(4, 5, 2, DEFAULT_BUDGET).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
