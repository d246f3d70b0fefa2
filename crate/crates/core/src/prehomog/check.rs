//! Seeded checks of `Δ_d(g·v) = χ_d(g)² Δ_d(v)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::forms::{disc3, disc4, BinaryCubic, TernaryQuadPair};
use super::group::{act3, act4, GroupElem3, GroupElem4};
use super::ring::{CoeffRing, Fp, Ring, TruncRing};
use crate::error::{Error, Result};

/// Number of random `(g, v)` pairs violating the identity among `cases` draws.
pub fn equivariance_failures(d: u32, ring: CoeffRing, cases: usize, seed: u64) -> Result<usize> {
    match ring {
        CoeffRing::Prime(p) => failures_over(&Fp::new(p)?, d, cases, seed),
        CoeffRing::Truncated { p, n } => failures_over(&TruncRing::new(p, n)?, d, cases, seed),
    }
}

fn failures_over<R: Ring>(r: &R, d: u32, cases: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..cases {
        let ok = match d {
            3 => {
                let g = GroupElem3::random(r, &mut rng);
                let f = BinaryCubic::from_coeffs(std::array::from_fn(|_| r.sample(&mut rng)));
                let chi = g.det(r);
                disc3(r, &act3(r, &g, &f)) == r.mul(r.mul(chi, chi), disc3(r, &f))
            }
            4 => {
                let g = GroupElem4::random(r, &mut rng);
                let v = TernaryQuadPair::new(std::array::from_fn(|_| r.sample(&mut rng)));
                let chi = g.det(r);
                disc4(r, &act4(r, &g, &v)) == r.mul(r.mul(chi, chi), disc4(r, &v))
            }
            _ => return Err(Error::UnsupportedDegree(d)),
        };
        if !ok {
            bad += 1;
        }
    }
    Ok(bad)
}
