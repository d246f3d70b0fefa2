//! Reference values recomputed here by separate, deliberately naive code paths.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resolvent::braidhur::{braid_orbits, ClassKind};
use resolvent::localzeta::{density_exact, etale_weighted_count};
use resolvent::prehomog::{disc4, Fp, TernaryQuadPair};
use resolvent::nichols::{NicholsAlgebra, DEFAULT_RULE_CAP};
use resolvent::qseries::{cohomology_series, global_table, local_table, TruncatedTSeries};

/// Power series in t with polynomial-in-q coefficients, `c[b][e]` = coefficient of q^e t^b.
type Grid = Vec<Vec<i64>>;

fn grid_mul(x: &Grid, y: &Grid, order: usize) -> Grid {
    let mut out = vec![Vec::new(); order + 1];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if i + j > order {
                continue;
            }
            let row = &mut out[i + j];
            for (e1, a) in xi.iter().enumerate() {
                for (e2, b) in yj.iter().enumerate() {
                    if row.len() <= e1 + e2 {
                        row.resize(e1 + e2 + 1, 0);
                    }
                    row[e1 + e2] += a * b;
                }
            }
        }
    }
    out
}

/// `1 / (1 - q^e t^k)` as a geometric series.
fn geometric(e: usize, k: usize, order: usize) -> Grid {
    let mut g = vec![Vec::new(); order + 1];
    let mut n = 0;
    while n * k <= order {
        g[n * k] = vec![0; n * e + 1];
        g[n * k][n * e] = 1;
        n += 1;
    }
    g
}

fn from_terms(terms: &[(usize, usize, i64)], order: usize) -> Grid {
    let mut g = vec![Vec::new(); order + 1];
    for &(e, b, c) in terms {
        if b <= order {
            if g[b].len() <= e {
                g[b].resize(e + 1, 0);
            }
            g[b][e] += c;
        }
    }
    g
}

fn i3_oracle(order: usize) -> Grid {
    let num = from_terms(&[(0, 0, 1), (0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)], order);
    let s = grid_mul(&num, &geometric(0, 2, order), order);
    grid_mul(&s, &geometric(1, 6, order), order)
}

fn i4_oracle(order: usize) -> Grid {
    let num = from_terms(
        &[
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
        ],
        order,
    );
    [(0, 1), (0, 2), (1, 6), (2, 8), (3, 12)]
        .into_iter()
        .fold(num, |acc, (e, k)| grid_mul(&acc, &geometric(e, k, order), order))
}

/// Coefficients of one series as `exponent -> value`, dropping zeros.
fn as_maps(s: &TruncatedTSeries) -> Vec<BTreeMap<i64, i64>> {
    s.coeffs()
        .iter()
        .map(|c| {
            c.terms()
                .map(|(e, v)| {
                    assert!(v.is_integer());
                    (e, v.to_integer().to_i64().unwrap())
                })
                .collect()
        })
        .collect()
}

/// `q^e t^b ↦ q^(shift·b + sign·e) t^b`.
fn grid_maps(g: &Grid, sign: i64, shift: i64) -> Vec<BTreeMap<i64, i64>> {
    g.iter()
        .enumerate()
        .map(|(b, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(e, c)| (shift * b as i64 + sign * e as i64, *c))
                .collect()
        })
        .collect()
}

#[test]
fn cubic_series_matches_naive_expansion() {
    let order = 48;
    let oracle = i3_oracle(order);
    assert_eq!(as_maps(&local_table(3, order).unwrap()), grid_maps(&oracle, 1, 0));
    assert_eq!(as_maps(&global_table(3, order).unwrap()), grid_maps(&oracle, -1, 1));
    assert_eq!(as_maps(&cohomology_series(3, order).unwrap()), grid_maps(&oracle, -2, 1));
}

#[test]
fn quartic_series_matches_naive_expansion() {
    let order = 72;
    let oracle = i4_oracle(order);
    assert_eq!(as_maps(&local_table(4, order).unwrap()), grid_maps(&oracle, 1, 0));
    assert_eq!(as_maps(&global_table(4, order).unwrap()), grid_maps(&oracle, -1, 1));
    assert_eq!(as_maps(&cohomology_series(4, order).unwrap()), grid_maps(&oracle, -2, 1));
}

#[test]
fn cubic_list_to_twelve() {
    let oracle = i3_oracle(12);
    let expected: [&[i64]; 13] = [
        &[1],
        &[1],
        &[2],
        &[2],
        &[3],
        &[2],
        &[3, 1],
        &[2, 1],
        &[3, 2],
        &[2, 2],
        &[3, 3],
        &[2, 2],
        &[3, 3, 1],
    ];
    for (b, want) in expected.iter().enumerate() {
        let mut got = oracle[b].clone();
        while got.last() == Some(&0) {
            got.pop();
        }
        assert_eq!(&got[..], *want, "t^{b}");
    }
}

fn disc_cubic(a: i64, b: i64, c: i64, d: i64) -> i64 {
    b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d
}

#[test]
fn cubic_unit_discriminant_count() {
    for p in [5i64, 7, 11] {
        let mut count = 0u128;
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if disc_cubic(a, b, c, d).rem_euclid(p) != 0 {
                            count += 1;
                        }
                    }
                }
            }
        }
        let r = density_exact(3, p as u32, 0, 1 << 30).unwrap();
        assert_eq!(r.count, count, "p={p}");
        assert_eq!(r.total, (p as u128).pow(4));
    }
}

/// Elements of `F_p[t]/t²` as pairs.
#[derive(Clone, Copy)]
struct Dual(i64, i64);

impl Dual {
    fn add(self, o: Dual) -> Dual {
        Dual(self.0 + o.0, self.1 + o.1)
    }
    fn mul(self, o: Dual) -> Dual {
        Dual(self.0 * o.0, self.0 * o.1 + self.1 * o.0)
    }
    fn scale(self, k: i64) -> Dual {
        Dual(k * self.0, k * self.1)
    }
}

#[test]
fn cubic_valuation_one_count() {
    let p = 5i64;
    let mut count = 0u128;
    let n = p.pow(8);
    for code in 0..n {
        let digit = |i: u32| (code / p.pow(i)) % p;
        let v: Vec<Dual> = (0..4).map(|i| Dual(digit(2 * i), digit(2 * i + 1))).collect();
        let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
        let disc = b
            .mul(b)
            .mul(c)
            .mul(c)
            .add(a.mul(c).mul(c).mul(c).scale(-4))
            .add(b.mul(b).mul(b).mul(d).scale(-4))
            .add(a.mul(a).mul(d).mul(d).scale(-27))
            .add(a.mul(b).mul(c).mul(d).scale(18));
        if disc.0.rem_euclid(p) == 0 && disc.1.rem_euclid(p) != 0 {
            count += 1;
        }
    }
    assert_eq!(count, 60000);
    let r = density_exact(3, 5, 1, 1 << 30).unwrap();
    assert_eq!(r.count, count);
}

fn det3(m: [[i64; 3]; 3], p: i64) -> i64 {
    let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    d.rem_euclid(p)
}

/// `4·det(Ax − By)` at a point, with `A`, `B` the Gram matrices (off-diagonal halves).
fn resolvent_at(a: &[i64; 6], b: &[i64; 6], x: i64, y: i64, p: i64) -> i64 {
    let half = (p + 1) / 2;
    let gram = |f: &[i64; 6]| {
        let h = |v: i64| v * half % p;
        [[f[0], h(f[3]), h(f[4])], [h(f[3]), f[1], h(f[5])], [h(f[4]), h(f[5]), f[2]]]
    };
    let (ga, gb) = (gram(a), gram(b));
    let mut m = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (ga[i][j] * x - gb[i][j] * y).rem_euclid(p);
        }
    }
    (4 * det3(m, p)) % p
}

#[test]
fn quartic_discriminant_matches_gram_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [5i64, 7, 11] {
        let field = Fp::new(p as u32).unwrap();
        let half = (p + 1) / 2;
        for _ in 0..20_000 {
            let a: [i64; 6] = std::array::from_fn(|_| rng.gen_range(0..p));
            let b: [i64; 6] = std::array::from_fn(|_| rng.gen_range(0..p));
            let f10 = resolvent_at(&a, &b, 1, 0, p);
            let f01 = resolvent_at(&a, &b, 0, 1, p);
            let f11 = resolvent_at(&a, &b, 1, 1, p);
            let f1m = resolvent_at(&a, &b, 1, p - 1, p);
            let cb = ((f11 - f1m) * half - f01).rem_euclid(p);
            let cc = ((f11 + f1m) * half - f10).rem_euclid(p);
            let want = disc_cubic(f10, cb, cc, f01).rem_euclid(p);
            let v = TernaryQuadPair::from_forms(a.map(|x| x as u32), b.map(|x| x as u32));
            assert_eq!(disc4(&field, &v) as i64, want, "p={p} a={a:?} b={b:?}");
        }
    }
}

fn poly_mul(x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut out = vec![0; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn quantum_int(n: usize) -> Vec<u64> {
    vec![1; n]
}

#[test]
fn nichols_hilbert_series_are_quantum_factorial_products() {
    let b3 = [2, 2, 3].iter().fold(vec![1u64], |acc, &n| poly_mul(&acc, &quantum_int(n)));
    let alg = NicholsAlgebra::build(3, DEFAULT_RULE_CAP).unwrap();
    let dims: Vec<u64> = alg.dims().into_iter().map(|x| x as u64).collect();
    assert_eq!(dims, b3);

    let b4 = [2, 2, 3, 3, 4, 4].iter().fold(vec![1u64], |acc, &n| poly_mul(&acc, &quantum_int(n)));
    assert_eq!(b4.len(), 13);
    assert_eq!(b4.iter().sum::<u64>(), 576);
    assert_eq!(b4[2], 19);
    let alg = NicholsAlgebra::build(4, DEFAULT_RULE_CAP).unwrap();
    let dims: Vec<u64> = alg.dims().into_iter().map(|x| x as u64).collect();
    assert_eq!(dims, b4);
}

type P = Vec<usize>;

fn compose(a: &P, b: &P) -> P {
    // (a∘b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn inverse(a: &P) -> P {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Orbit sizes of the Hurwitz action on n-tuples of transpositions, by breadth-first search.
fn hurwitz_orbit_sizes(d: usize, n: usize) -> Vec<usize> {
    let mut transpositions = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut t: P = (0..d).collect();
            t.swap(i, j);
            transpositions.push(t);
        }
    }
    let mut tuples: Vec<Vec<P>> = vec![Vec::new()];
    for _ in 0..n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                transpositions.iter().map(move |s| {
                    let mut u = t.clone();
                    u.push(s.clone());
                    u
                })
            })
            .collect();
    }
    let mut seen: HashSet<Vec<P>> = HashSet::new();
    let mut sizes = Vec::new();
    for start in tuples {
        if !seen.insert(start.clone()) {
            continue;
        }
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for i in 0..n.saturating_sub(1) {
                for forward in [true, false] {
                    let mut u = t.clone();
                    let (g, h) = (t[i].clone(), t[i + 1].clone());
                    if forward {
                        u[i] = h.clone();
                        u[i + 1] = compose(&compose(&inverse(&h), &g), &h);
                    } else {
                        u[i] = compose(&compose(&g, &h), &inverse(&g));
                        u[i + 1] = g;
                    }
                    if seen.insert(u.clone()) {
                        size += 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

#[test]
fn braid_orbits_match_breadth_first_search() {
    assert_eq!(hurwitz_orbit_sizes(3, 2), vec![1, 1, 1, 3, 3]);
    for (d, n) in [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3)] {
        let report = braid_orbits(d, n, ClassKind::Transpositions, 1 << 24).unwrap();
        assert_eq!(report.size_list(), hurwitz_orbit_sizes(d, n), "d={d} n={n}");
    }
}

/// `Σ_λ 1/z_λ` over partitions of `d`, with `z_λ = Π i^{m_i} m_i!`.
fn partition_sum(d: usize) -> BigRational {
    fn go(rest: usize, max: usize, z: u64) -> BigRational {
        if rest == 0 {
            return BigRational::new(1.into(), z.into());
        }
        let mut total = BigRational::from_integer(0.into());
        for part in (1..=max.min(rest)).rev() {
            let mut m = 1u64;
            let mut zz = z * part as u64;
            let mut used = part;
            while used <= rest {
                total += go(rest - used, part - 1, zz);
                m += 1;
                zz *= part as u64 * m;
                used += part;
            }
        }
        total
    }
    go(d, d, 1)
}

#[test]
fn etale_count_is_one() {
    for d in 1..=8 {
        assert!(partition_sum(d).is_one(), "d={d}");
        assert!(etale_weighted_count(d as u32).is_one(), "d={d}");
    }
}
