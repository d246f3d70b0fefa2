//! Seeded Monte-Carlo estimation of discriminant-valuation densities.
//!
//! Samples are drawn in chunks of [`CHUNK`]. Chunk `c` uses its own ChaCha8 stream seeded with
//! `splitmix64(seed + (c + 1)·0x9E3779B97F4A7C15)`, so the estimate depends only on the master
//! seed and the sample count, never on the number of worker threads.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::count::{disc3_mod, eval_mod};
use super::measure::space_dim;
use crate::error::{Error, Result};
use crate::prehomog::forms::{disc3, disc4, BinaryCubic, TernaryQuadPair};
use crate::prehomog::resolvent_table::{CUBIC_A, CUBIC_B, CUBIC_C, CUBIC_D};
use crate::prehomog::ring::{check_prime, Ring, Trunc, TruncRing, MAX_TRUNC};

pub const CHUNK: u64 = 1 << 16;
pub const MIN_SAMPLES: u64 = 10_000;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn chunk_seed(seed: u64, chunk: u64) -> u64 {
    splitmix64(seed.wrapping_add((chunk + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Counts how many of `samples` draws satisfy `event`, with per-chunk seeded generators.
pub fn estimate<F>(samples: u64, seed: u64, event: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed(seed, c));
            let len = CHUNK.min(samples - c * CHUNK);
            (0..len).filter(|_| event(&mut rng)).count() as u64
        })
        .sum()
}

/// Hits of the event "discriminant has valuation exactly `b`" among uniform samples
/// from `V_d(F_p[t]/t^{b+1})`.
pub fn valuation_hits(d: u32, p: u32, b: usize, samples: u64, seed: u64) -> Result<u64> {
    check_prime(p)?;
    if samples < MIN_SAMPLES {
        return Err(Error::Precondition(format!(
            "Monte-Carlo needs at least {MIN_SAMPLES} samples"
        )));
    }
    let dim = space_dim(d)? as usize;
    let n = b + 1;
    if n > MAX_TRUNC {
        return Err(Error::Precondition(format!("b = {b} exceeds the supported truncation")));
    }
    let ring = TruncRing::new(p, n)?;
    let digit = Uniform::new(0, p);
    Ok(estimate(samples, seed, |rng| {
        let mut coords = [Trunc::default(); 12];
        for c in coords.iter_mut().take(dim) {
            for k in 0..n {
                c.0[k] = digit.sample(rng);
            }
        }
        sample_valuation(&ring, d, &coords) == b
    }))
}

/// Valuation of the discriminant, with `N` standing for "≥ N". The reduction mod `t` is
/// checked first with plain integer arithmetic since most samples have valuation 0.
pub fn sample_valuation(ring: &TruncRing, d: u32, coords: &[Trunc; 12]) -> usize {
    let p = ring.characteristic();
    let n = ring.order();
    let low: [i64; 12] = std::array::from_fn(|i| coords[i].0[0] as i64);
    let d0 = if d == 3 {
        disc3_mod(low[0] as u64, low[1] as u64, low[2] as u64, low[3] as u64, p as u64)
    } else {
        let c = |t| eval_mod(t, &low, p) as u64;
        disc3_mod(c(&CUBIC_A), c(&CUBIC_B), c(&CUBIC_C), c(&CUBIC_D), p as u64)
    };
    if d0 != 0 {
        return 0;
    }
    if n == 1 {
        return 1;
    }
    let disc = if d == 3 {
        disc3(ring, &BinaryCubic::new(coords[0], coords[1], coords[2], coords[3]))
    } else {
        disc4(ring, &TernaryQuadPair::new(*coords))
    };
    ring.valuation(disc).unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_of_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| valuation_hits(3, 5, 1, 200_000, 7).unwrap())
        };
        assert_eq!(run(1), run(3));
    }

    #[test]
    fn chunk_seeds_differ() {
        assert_ne!(chunk_seed(1, 0), chunk_seed(1, 1));
        assert_ne!(chunk_seed(1, 0), chunk_seed(2, 0));
    }
}
