//! One line per acceptance criterion, evaluated directly against the library.
//!
//! Criterion 1 quotes the `t^11` and `t^12` coefficients of `I_3` as `2+3q` and `3+4q+q²`.
//! Expanding `(1+t+t²+t³+t⁴)/((1−t²)(1−qt⁶))` gives `2+2q` and `3+3q+q²` (the `q^k t^{6k}`
//! terms of the second factor add one `q`-power every six steps, never two at once), and every
//! downstream check that uses those coefficients agrees with the expansion. The quoted list is
//! compared literally, so that criterion is expected to fail; the test asserts that it is the
//! only one that does.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use resolvent::braidhur::{braid_orbits, braid_relations_exhaustive, coinvariants_dim, ClassKind};
use resolvent::cli::DEFAULT_SEED;
use resolvent::cohomology::{
    bosonization_even_check, d_squared_vanishes, euler_characteristic_check, ext_dims, invariant_ext_dims, shuffle_ext_small,
    ExtOptions, ExtTable, GradedProducts,
};
use resolvent::linalg::RankMethod;
use resolvent::localzeta::{compare_row, density_exact, density_mc, etale_weighted_count, predicted_coefficient, to_coefficient, Coefficient};
use resolvent::nichols::{braid_equation_holds, quantum_symmetrizer_dims, ActionMode, Alphabet, NicholsAlgebra, RankMode, DEFAULT_RULE_CAP};
use resolvent::prehomog::{equivariance_failures, CoeffRing};
use resolvent::qseries::{cohomology_series, cohomology_table, duality_failure, first_non_count, global_table, local_table, secondary_term_check, LaurentQPoly};
use resolvent::report::Verdict;

const EXPECTED_FAILING: [u32; 1] = [1];

struct Line {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn criterion(id: u32, title: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Result<(bool, String), String>) -> Line {
    let start = Instant::now();
    let (mut pass, mut detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            pass = false;
            detail.push_str(&format!("; exceeded {limit:?}"));
        }
    }
    let line = Line { id, title, pass, detail, elapsed };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {:>2} {} {}: {} ({:.1}s)",
        line.id,
        if line.pass { "PASS" } else { "FAIL" },
        line.title,
        line.detail,
        line.elapsed.as_secs_f64()
    );
    let _ = out.flush();
    line
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn int_poly(terms: &[(i64, i64)]) -> LaurentQPoly {
    LaurentQPoly::from_int_terms(terms.iter().copied())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn criterion_1() -> Line {
    criterion(1, "Igusa expansion of I_3 to t^12", Some(Duration::from_secs(1)), || {
        let quoted: [&[(i64, i64)]; 13] = [
            &[(0, 1)],
            &[(0, 1)],
            &[(0, 2)],
            &[(0, 2)],
            &[(0, 3)],
            &[(0, 2)],
            &[(0, 3), (1, 1)],
            &[(0, 2), (1, 1)],
            &[(0, 3), (1, 2)],
            &[(0, 2), (1, 2)],
            &[(0, 3), (1, 3)],
            &[(0, 2), (1, 3)],
            &[(0, 3), (1, 4), (2, 1)],
        ];
        let s = local_table(3, 12).map_err(e)?;
        let off: Vec<String> = quoted
            .iter()
            .enumerate()
            .filter(|(b, q)| s.coeff(*b) != &int_poly(q))
            .map(|(b, q)| format!("t^{b}: listed {}, expansion {}", int_poly(q), s.coeff(b)))
            .collect();
        Ok(if off.is_empty() {
            (true, "all 13 coefficients equal the listed values".into())
        } else {
            (false, off.join("; "))
        })
    })
}

fn criterion_2() -> Line {
    criterion(2, "local oracle d=3", Some(Duration::from_secs(300)), || {
        let mut notes = Vec::new();
        let mut ok = true;
        for (p, b) in [(5, 0), (5, 1), (5, 2), (7, 0), (7, 1)] {
            let r = density_exact(3, p, b, 1 << 40).map_err(e)?;
            let Coefficient::Exact(c) = to_coefficient(&r).map_err(e)? else {
                return Err("exact run returned an estimate".into());
            };
            let predicted = predicted_coefficient(3, p, b).map_err(e)?;
            ok &= c == predicted;
            notes.push(format!("({p},{b}) {c}"));
            match (p, b) {
                (5, 0) => ok &= (r.count, r.total) == (480, 625),
                (5, 1) => ok &= (r.count, r.total) == (60000, 5u128.pow(8)),
                _ => {}
            }
        }
        Ok((ok, notes.join(", ")))
    })
}

fn criterion_3() -> Line {
    criterion(3, "local oracle d=4", Some(Duration::from_secs(600 + 1200)), || {
        let exact = density_exact(4, 5, 0, 1 << 40).map_err(e)?;
        let want = BigRational::from_integer(BigInt::from(5).pow(12)) * rat(4, 5) * rat(24, 25) * rat(24, 25) * rat(124, 125);
        let exact_ok = BigRational::from_integer(BigInt::from(exact.count)) == want;
        let mc = density_mc(4, 5, 1, 100_000_000, DEFAULT_SEED).map_err(e)?;
        let row = compare_row(&mc).map_err(e)?;
        let mc_ok = row.verdict == Verdict::WithinCi;
        Ok((
            exact_ok && mc_ok,
            format!(
                "b=0 count {} (want {want}); b=1 estimate {} ± {:.2e} vs {}",
                exact.count,
                row.coefficient,
                row.std_error.unwrap_or(f64::NAN),
                row.predicted
            ),
        ))
    })
}

fn criterion_4() -> Line {
    criterion(4, "duality and integrality", Some(Duration::from_secs(1)), || {
        let mut bad = Vec::new();
        for d in [3, 4] {
            if let Some(b) = duality_failure(d, 30).map_err(e)? {
                bad.push(format!("duality d={d} b={b}"));
            }
            for s in [local_table(d, 40), global_table(d, 40), cohomology_series(d, 40)] {
                if let Some((b, a)) = first_non_count(&s.map_err(e)?) {
                    bad.push(format!("d={d} q^{a} t^{b}"));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "duality b<=30, integrality b<=40".into() } else { bad.join("; ") }))
    })
}

fn criterion_5() -> Line {
    criterion(5, "secondary-term structure", Some(Duration::from_secs(30)), || {
        let mut ok = true;
        let mut notes = Vec::new();
        for (d, b_max, slopes, period) in [(4, 220, vec!["3/4", "5/6", "1"], 24), (3, 60, vec!["5/6", "1"], 6)] {
            let rep = secondary_term_check(d, b_max).map_err(e)?;
            ok &= rep.passes() && rep.slopes == slopes && rep.period == period;
            notes.push(format!("d={d} b<={b_max} slopes {{{}}} period {}", rep.slopes.join(", "), rep.period));
        }
        Ok((ok, notes.join("; ")))
    })
}

fn poly_product(factors: &[usize]) -> Vec<usize> {
    factors.iter().fold(vec![1], |acc, &n| {
        let mut out = vec![0; acc.len() + n - 1];
        for (i, a) in acc.iter().enumerate() {
            for slot in &mut out[i..i + n] {
                *slot += a;
            }
        }
        out
    })
}

fn criterion_6(algebras: &mut Vec<NicholsAlgebra>) -> Line {
    criterion(6, "Nichols Hilbert series", Some(Duration::from_secs(300)), || {
        let b3 = NicholsAlgebra::build(3, DEFAULT_RULE_CAP).map_err(e)?;
        let b4 = NicholsAlgebra::build(4, DEFAULT_RULE_CAP).map_err(e)?;
        let (h3, h4) = (b3.dims(), b4.dims());
        let palindromic = h4.iter().eq(h4.iter().rev());
        let ok = h3 == [1, 3, 4, 3, 1]
            && h3 == poly_product(&[2, 2, 3])
            && h4 == poly_product(&[2, 2, 3, 3, 4, 4])
            && h4.len() == 13
            && palindromic
            && h4.iter().sum::<usize>() == 576
            && h4[2] == 19;
        algebras.push(b3);
        algebras.push(b4);
        Ok((ok, format!("B3 {h3:?}; B4 {h4:?}")))
    })
}

fn criterion_7(algebras: &[NicholsAlgebra]) -> Line {
    criterion(7, "symmetrizer vs rewriting", None, || {
        let mut ok = algebras.len() == 2;
        let mut notes = Vec::new();
        for (alg, n_max) in algebras.iter().zip([5usize, 6]) {
            let sym = quantum_symmetrizer_dims(&Alphabet::new(alg.d).map_err(e)?, n_max, RankMode::Auto, DEFAULT_SEED).map_err(e)?;
            let mut gb = alg.dims();
            gb.resize(n_max + 1, 0);
            for (n, (dim, method)) in sym.iter().enumerate() {
                ok &= *dim == gb[n];
                let exact_needed = alg.d == 3 || n <= 4;
                ok &= !exact_needed || *method == RankMethod::Exact;
            }
            let modular: Vec<usize> = (0..sym.len()).filter(|&n| sym[n].1 != RankMethod::Exact).collect();
            notes.push(format!("d={} n<={n_max} agree, modular degrees {modular:?}", alg.d));
        }
        Ok((ok, notes.join("; ")))
    })
}

fn compare_cohomology(alg: &NicholsAlgebra, b_max: usize, opts: &ExtOptions) -> Result<(bool, String, ExtTable), String> {
    let t = invariant_ext_dims(alg, ActionMode::Geometric, b_max, b_max, opts).map_err(e)?;
    let predicted = cohomology_table(alg.d as u32, b_max as u32, b_max as u32).map_err(e)?;
    let diffs = t.dims.differences(&predicted, b_max as u32, b_max as u32);
    let note = if diffs.is_empty() {
        format!("d={} b<={b_max} equal ({})", alg.d, t.method_label())
    } else {
        format!("d={} differs at {diffs:?}", alg.d)
    };
    Ok((diffs.is_empty(), note, t))
}

fn criterion_8(algebras: &[NicholsAlgebra], geometric: &mut Vec<ExtTable>) -> Line {
    criterion(8, "invariant cohomology vs I_d(q^-2, qt)", None, || {
        let opts = ExtOptions::default();
        let mut ok = algebras.len() == 2;
        let mut notes = Vec::new();
        for (alg, b_max) in algebras.iter().zip([10usize, 6]) {
            let start = Instant::now();
            let (pass, note, t) = compare_cohomology(alg, b_max, &opts)?;
            ok &= pass;
            if alg.d == 4 && start.elapsed() > Duration::from_secs(1800) {
                ok = false;
                notes.push("d=4 exceeded 30 min".into());
            }
            notes.push(note);
            geometric.push(t);
        }
        if std::env::var_os("RESOLVENT_STRETCH").is_some() {
            let (pass, note, _) = compare_cohomology(&algebras[1], 7, &opts)?;
            ok &= pass;
            notes.push(format!("stretch {note}"));
        }
        Ok((ok, notes.join("; ")))
    })
}

fn criterion_9(algebras: &[NicholsAlgebra], geometric: &[ExtTable]) -> Line {
    criterion(9, "bosonization on even b", None, || {
        let opts = ExtOptions::default();
        let mut ok = algebras.len() == 2 && geometric.len() == 2;
        let mut notes = Vec::new();
        for ((alg, geo), b_max) in algebras.iter().zip(geometric).zip([8usize, 6]) {
            let std = invariant_ext_dims(alg, ActionMode::Standard, b_max, b_max, &opts).map_err(e)?;
            let rep = bosonization_even_check(&std, geo, b_max);
            ok &= rep.passes();
            notes.push(format!(
                "d={} b<={b_max}: {} even mismatches, {} odd differences",
                alg.d,
                rep.even_mismatches.len(),
                rep.odd_differences.len()
            ));
        }
        Ok((ok, notes.join("; ")))
    })
}

fn criterion_10() -> Line {
    criterion(10, "braid module", None, || {
        let rep = braid_orbits(3, 2, ClassKind::Transpositions, 1 << 24).map_err(e)?;
        let relations = braid_relations_exhaustive(3, 3, ClassKind::Transpositions).map_err(e)?;
        let h0 = shuffle_ext_small(3, 2, &ExtOptions::default()).map_err(e)?.get(2, 2);
        let coinv = coinvariants_dim(3, 2, ClassKind::Transpositions, 1 << 24).map_err(e)?;
        let ok = rep.orbit_count == 5 && rep.size_list() == [1, 1, 1, 3, 3] && relations && h0 == 5 && coinv as u64 == h0;
        Ok((
            ok,
            format!("{} orbits {:?}, relations {relations}, H0 {h0}, coinvariants {coinv}", rep.orbit_count, rep.size_list()),
        ))
    })
}

fn criterion_11(algebras: &[NicholsAlgebra]) -> Line {
    criterion(11, "property suites", None, || {
        let mut bad = Vec::new();
        for d in [3, 4] {
            for (i, ring) in [CoeffRing::Prime(5), CoeffRing::Prime(7), CoeffRing::Truncated { p: 5, n: 3 }, CoeffRing::Truncated { p: 7, n: 2 }]
                .into_iter()
                .enumerate()
            {
                let n = equivariance_failures(d, ring, 1000, DEFAULT_SEED + i as u64).map_err(e)?;
                if n > 0 {
                    bad.push(format!("equivariance d={d} {ring:?}: {n}"));
                }
            }
        }
        for d in [3, 4] {
            if !braid_equation_holds(&Alphabet::new(d).map_err(e)?) {
                bad.push(format!("braid equation d={d}"));
            }
        }
        for (alg, b_max) in algebras.iter().zip([7usize, 4]) {
            let products = GradedProducts::from_nichols(alg, b_max).map_err(e)?;
            for b in 2..=b_max.min(5) {
                for a in 2..=b {
                    if !d_squared_vanishes(&products, a, b).map_err(e)? {
                        bad.push(format!("d∘d d={} ({a},{b})", alg.d));
                    }
                }
            }
            let table = ext_dims(alg, b_max, b_max, &ExtOptions::default()).map_err(e)?;
            for (b, alt, want) in euler_characteristic_check(&alg.dims(), &table, b_max) {
                if alt != want {
                    bad.push(format!("Euler d={} b={b}: {alt} vs {want}", alg.d));
                }
            }
        }
        for d in 1..=8 {
            if !etale_weighted_count(d).is_one() {
                bad.push(format!("étale count d={d}"));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "all exact".into() } else { bad.join("; ") }))
    })
}

#[test]
fn acceptance_criteria() {
    let mut algebras = Vec::new();
    let mut geometric = Vec::new();
    let lines = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(&mut algebras),
        criterion_7(&algebras),
        criterion_8(&algebras, &mut geometric),
        criterion_9(&algebras, &geometric),
        criterion_10(),
        criterion_11(&algebras),
    ];
    let failing: BTreeSet<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    let expected: BTreeSet<u32> = EXPECTED_FAILING.into_iter().collect();
    assert_eq!(failing, expected, "failing criteria differ from the expected set");
}
