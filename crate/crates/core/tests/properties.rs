use std::sync::OnceLock;

use proptest::prelude::*;
use resolvent::braidhur::{braid_relations_hold, hurwitz_sigma, hurwitz_sigma_inv, ClassAlphabet, ClassKind, MonodromyTuple};
use resolvent::cohomology::{d_squared_vanishes, euler_characteristic_check, ext_dims, ExtOptions, GradedProducts};
use resolvent::linalg::{rank_sparse, Field, ModPrime};
use resolvent::nichols::{braid_equation_holds, Alphabet, NicholsAlgebra, DEFAULT_RULE_CAP};
use resolvent::prehomog::{equivariance_failures, CoeffRing};
use resolvent::qseries::{LaurentQPoly, SubstitutionSpec, TruncatedTSeries};

const P: u64 = 1_000_003;

fn b3() -> &'static NicholsAlgebra {
    static ALG: OnceLock<NicholsAlgebra> = OnceLock::new();
    ALG.get_or_init(|| NicholsAlgebra::build(3, DEFAULT_RULE_CAP).unwrap())
}

fn b3_products() -> &'static GradedProducts {
    static PRODUCTS: OnceLock<GradedProducts> = OnceLock::new();
    PRODUCTS.get_or_init(|| GradedProducts::from_nichols(b3(), 4).unwrap())
}

/// Plain row reduction on a dense copy.
fn dense_rank(rows: &[Vec<(usize, u64)>], ncols: usize) -> usize {
    let f = ModPrime::new(P);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0; ncols];
            for &(c, x) in r {
                v[c] = f.add(&v[c], &x);
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = f.inv(&m[rank][col]);
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let c = f.mul(&m[i][col], &inv);
                for j in 0..ncols {
                    let t = f.mul(&c, &m[rank][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn sparse_rows() -> impl Strategy<Value = Vec<Vec<(usize, u64)>>> {
    prop::collection::vec(prop::collection::btree_map(0usize..12, 1u64..5, 0..5), 0..14)
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().collect()).collect())
}

fn laurent() -> impl Strategy<Value = LaurentQPoly> {
    prop::collection::vec((-4i64..5, -3i64..4), 0..4).prop_map(LaurentQPoly::from_int_terms)
}

fn series(order: usize) -> impl Strategy<Value = TruncatedTSeries> {
    prop::collection::vec(laurent(), order + 1).prop_map(move |c| TruncatedTSeries::from_coeffs(c, order))
}

fn transposition_tuple(d: usize) -> impl Strategy<Value = MonodromyTuple> {
    let count = d * (d - 1) / 2;
    prop::collection::vec(0..count, 2..6).prop_map(move |idx| {
        let alpha = ClassAlphabet::new(d, ClassKind::Transpositions).unwrap();
        MonodromyTuple::new(idx.into_iter().map(|i| alpha.elems[i].clone()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_rank_matches_dense(rows in sparse_rows(), spread in 1usize..1000) {
        let want = dense_rank(&rows, 12);
        // Column labels far apart and out of order must not matter.
        let relabelled = rows
            .iter()
            .map(|r| {
                let mut v: Vec<(usize, u64)> = r.iter().map(|&(c, x)| ((11 - c) * spread, x)).collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect();
        prop_assert_eq!(rank_sparse(&ModPrime::new(P), relabelled), want);
    }

    #[test]
    fn discriminant_is_equivariant(seed in any::<u64>(), p in prop::sample::select(vec![5u32, 7, 11, 13])) {
        for d in [3, 4] {
            prop_assert_eq!(equivariance_failures(d, CoeffRing::Prime(p), 8, seed).unwrap(), 0);
            prop_assert_eq!(equivariance_failures(d, CoeffRing::Truncated { p, n: 3 }, 8, seed).unwrap(), 0);
        }
    }

    #[test]
    fn hurwitz_moves_are_invertible_and_keep_the_product(t in transposition_tuple(4), i in 0usize..4) {
        let i = 1 + i % (t.len() - 1);
        let moved = hurwitz_sigma(i, &t).unwrap();
        prop_assert_eq!(moved.ordered_product(4), t.ordered_product(4));
        prop_assert_eq!(hurwitz_sigma_inv(i, &moved).unwrap(), t.clone());
        prop_assert!(braid_relations_hold(&t).unwrap());
    }

    #[test]
    fn global_substitution_is_an_involution(s in series(6)) {
        let back = s.substitute(SubstitutionSpec::GLOBAL).substitute(SubstitutionSpec::GLOBAL);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn products_truncate_consistently(x in series(6), y in series(6), k in 0usize..6) {
        prop_assert_eq!(x.mul(&y).truncate(k), x.truncate(k).mul(&y.truncate(k)));
    }

    #[test]
    fn bar_differential_squares_to_zero(a in 2usize..5, b in 2usize..5) {
        prop_assume!(a <= b);
        prop_assert!(d_squared_vanishes(b3_products(), a, b).unwrap());
    }
}

#[test]
fn braid_equation_on_transposition_spaces() {
    for d in 3..=5 {
        assert!(braid_equation_holds(&Alphabet::new(d).unwrap()), "d={d}");
    }
}

#[test]
fn euler_characteristic_inverts_the_hilbert_series() {
    let alg = b3();
    let table = ext_dims(alg, 7, 7, &ExtOptions::default()).unwrap();
    for (b, alternating, expected) in euler_characteristic_check(&alg.dims(), &table, 7) {
        assert_eq!(alternating, expected, "b={b}");
    }
}
