//! The `verify-all` pipeline: every acceptance check, collected into one report.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::cache::{Cache, DensityRequest, CODE_VERSION};
use super::config::RunConfig;
use crate::braidhur::{braid_orbits, braid_relations_exhaustive, coinvariants_dim, ClassKind};
use crate::cohomology::{
    bosonization_even_check, d_squared_vanishes, euler_characteristic_check, ext_dims, invariant_ext_dims,
    shuffle_ext_small, ExtOptions, ExtTable, GradedProducts,
};
use crate::error::{Error, Result};
use crate::localzeta::{compare_row, etale_weighted_count, DensityResult};
use crate::nichols::{
    braid_equation_holds, expected_hilbert, quantum_symmetrizer_dims, ActionMode, Alphabet, NicholsAlgebra, RankMode,
};
use crate::prehomog::{equivariance_failures, CoeffRing};
use crate::qseries::rational::igusa_rational;
use crate::qseries::{cohomology_series, cohomology_table, duality_failure, first_non_count, global_table, local_table, secondary_term_check};
use crate::report::Verdict;
use crate::table::BigradedTable;

/// `t^b` coefficients of `I_3(q, t)` for `b ≤ 12`, as `(q-exponent, coefficient)` lists,
/// re-derived by hand from the recurrence of the denominator.
pub const I3_REFERENCE: [&[(i64, i64)]; 13] = [
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
    &[(0, 2), (1, 2)],
    &[(0, 3), (1, 3), (2, 1)],
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub criterion: u32,
    pub parameters: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub version: String,
    pub seed: u64,
    pub threads: Option<usize>,
    pub checks: Vec<CheckRecord>,
}

impl VerdictReport {
    pub fn has_mismatch(&self) -> bool {
        self.checks.iter().any(|c| c.verdict.is_failure())
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_mismatch())
    }

    /// Drops runtimes so that identical runs serialize identically.
    pub fn without_runtimes(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.runtime_ms = None;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,criterion,parameters,expected,computed,verdict,runtime_ms\n");
        for c in &self.checks {
            let rt = c.runtime_ms.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                csv_field(&c.check_id),
                c.criterion,
                csv_field(&c.parameters),
                csv_field(&c.expected),
                csv_field(&c.computed),
                c.verdict,
                rt
            ));
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub skip_heavy: bool,
    /// Adds the `d = 4, b = 7` cohomology window.
    pub stretch: bool,
    pub record_runtimes: bool,
}

struct Outcome {
    expected: String,
    computed: String,
    verdict: Verdict,
}

impl Outcome {
    fn compare(expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let verdict = Verdict::from_bool(expected == computed);
        Self {
            expected,
            computed,
            verdict,
        }
    }
}

struct Runner<'a> {
    opts: &'a VerifyOptions,
    checks: Vec<CheckRecord>,
}

impl Runner<'_> {
    fn run(&mut self, id: &str, criterion: u32, params: &str, heavy: bool, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = if heavy && self.opts.skip_heavy {
            Ok(Outcome {
                expected: String::new(),
                computed: "skipped (--skip-heavy)".into(),
                verdict: Verdict::Skipped,
            })
        } else {
            f()
        };
        let outcome = outcome.unwrap_or_else(|e| match e {
            Error::BudgetExceeded { .. } => Outcome {
                expected: String::new(),
                computed: format!("skipped: {e}"),
                verdict: Verdict::Skipped,
            },
            e => Outcome {
                expected: String::new(),
                computed: format!("error: {e}"),
                verdict: Verdict::Mismatch,
            },
        });
        let runtime = start.elapsed().as_millis();
        log::info!("{id} [{params}]: {} in {runtime} ms", outcome.verdict);
        self.checks.push(CheckRecord {
            check_id: id.into(),
            criterion,
            parameters: params.into(),
            expected: outcome.expected,
            computed: outcome.computed,
            verdict: outcome.verdict,
            runtime_ms: self.opts.record_runtimes.then_some(runtime),
        });
    }
}

fn reference_poly_string(terms: &[(i64, i64)]) -> String {
    let mut p = crate::qseries::LaurentQPoly::zero();
    for &(e, c) in terms {
        p.add_term(e, BigRational::from_integer(BigInt::from(c)));
    }
    p.to_string()
}

/// Rows `b: e_0,e_1,…` of a table, joined by ` | `.
pub fn table_rows(t: &BigradedTable, b_max: u32) -> String {
    (0..=b_max)
        .map(|b| {
            let row: Vec<String> = (0..=b).map(|a| t.get(a, b).to_string()).collect();
            format!("b={b}: {}", row.join(","))
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn density_outcome(cache: &Cache, d: u32, p: u32, b: u32, req: DensityRequest) -> Result<(DensityResult, Verdict, String, String)> {
    let r = cache.density(d, p, b, req)?;
    let row = compare_row(&r)?;
    let computed = match row.std_error {
        Some(se) => format!("{} ± {se:.6}", row.coefficient),
        None => format!("{} (count {}/{})", row.coefficient, r.count, r.total),
    };
    Ok((r, row.verdict, row.predicted, computed))
}

fn merge_verdicts(vs: &[Verdict]) -> Verdict {
    if vs.iter().any(|v| v.is_failure()) {
        Verdict::Mismatch
    } else if vs.contains(&Verdict::WithinCi) {
        Verdict::WithinCi
    } else {
        Verdict::Match
    }
}

fn cohomology_outcome(alg: &NicholsAlgebra, b_max: u32, opts: &ExtOptions) -> Result<(Outcome, ExtTable)> {
    let table = invariant_ext_dims(alg, ActionMode::Geometric, b_max as usize, b_max as usize, opts)?;
    let predicted = cohomology_table(alg.d as u32, b_max, b_max)?;
    let diffs = table.dims.differences(&predicted, b_max, b_max);
    let computed = if diffs.is_empty() {
        format!("{} [{}]", table_rows(&table.dims, b_max), table.method_label())
    } else {
        let list: Vec<String> = diffs.iter().map(|(a, b, x, y)| format!("({a},{b}): {x} vs {y}")).collect();
        format!("differs at {}", list.join("; "))
    };
    Ok((
        Outcome {
            expected: table_rows(&predicted, b_max),
            verdict: Verdict::from_bool(diffs.is_empty()),
            computed,
        },
        table,
    ))
}

/// Runs every check. Failures are collected into the report rather than aborting.
pub fn verify_all(cfg: &RunConfig, cache: &Cache, opts: &VerifyOptions) -> VerdictReport {
    let mut r = Runner {
        opts,
        checks: Vec::new(),
    };
    let budgets = &cfg.budgets;
    let ext_opts = ExtOptions {
        chain_budget: budgets.get_usize("chains"),
        ..ExtOptions::default()
    };
    let rule_cap = budgets.get_usize("rules");

    r.run("igusa-expansion", 1, "d=3 b<=12", false, || {
        let s = local_table(3, 12)?;
        let by_division = igusa_rational(3)?.expand_by_division(12);
        let expected: Vec<String> = I3_REFERENCE.iter().map(|t| reference_poly_string(t)).collect();
        let computed: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
        let mut o = Outcome::compare(expected.join(", "), computed.join(", "));
        if by_division != s {
            o.verdict = Verdict::Mismatch;
            o.computed.push_str(" (series and long division disagree)");
        }
        Ok(o)
    });

    for &(p, b_top) in &[(5u32, 2u32), (7, 1)] {
        let params = format!("d=3 p={p} b<={b_top} exact");
        r.run("local-oracle-d3", 2, &params, false, || {
            let mut expected = Vec::new();
            let mut computed = Vec::new();
            let mut verdicts = Vec::new();
            for b in 0..=b_top {
                let (_, v, pred, comp) = density_outcome(cache, 3, p, b, DensityRequest::Exact { budget: budgets.get("count") })?;
                expected.push(format!("b={b}: {pred}"));
                computed.push(format!("b={b}: {comp}"));
                verdicts.push(v);
            }
            Ok(Outcome {
                expected: expected.join("; "),
                computed: computed.join("; "),
                verdict: merge_verdicts(&verdicts),
            })
        });
    }

    r.run("local-oracle-d4-exact", 3, "d=4 p=5 b=0 exact", true, || {
        let res = cache.density(4, 5, 0, DensityRequest::Exact { budget: budgets.get("count") })?;
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let expected = BigRational::from_integer(BigInt::from(5).pow(12)) * q(4, 5) * q(24, 25) * q(24, 25) * q(124, 125);
        Ok(Outcome::compare(expected, res.count))
    });

    let samples = budgets.get_u64("samples");
    let mc_params = format!("d=4 p=5 b=1 samples={samples} seed={}", cfg.seed);
    r.run("local-oracle-d4-mc", 3, &mc_params, true, || {
        let (_, v, pred, comp) = density_outcome(cache, 4, 5, 1, DensityRequest::MonteCarlo { samples, seed: cfg.seed })?;
        Ok(Outcome {
            expected: format!("{pred} within 4σ"),
            computed: comp,
            verdict: v,
        })
    });

    r.run("duality", 4, "d=3,4 b<=30", false, || {
        let fails: Vec<String> = [3, 4]
            .iter()
            .map(|&d| duality_failure(d, 30).map(|f| (d, f)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter_map(|(d, f)| f.map(|b| format!("d={d} fails at b={b}")))
            .collect();
        Ok(Outcome::compare("holds", if fails.is_empty() { "holds".into() } else { fails.join("; ") }))
    });

    r.run("integrality", 4, "d=3,4 b<=40 local, global, cohomology", false, || {
        let mut fails = Vec::new();
        for d in [3, 4] {
            for (kind, s) in [
                ("local", local_table(d, 40)?),
                ("global", global_table(d, 40)?),
                ("cohomology", cohomology_series(d, 40)?),
            ] {
                if let Some((b, a)) = first_non_count(&s) {
                    fails.push(format!("{kind} d={d}: q^{a} t^{b}"));
                }
            }
        }
        Ok(Outcome::compare("nonnegative integers", if fails.is_empty() { "nonnegative integers".into() } else { fails.join("; ") }))
    });

    for &(d, b_max) in &[(4u32, 220usize), (3, 60)] {
        r.run("secondary-terms", 5, &format!("d={d} b<={b_max}"), false, || {
            let rep = secondary_term_check(d, b_max)?;
            let computed = match rep.first_failure() {
                None => format!("slopes {{{}}} period {}", rep.slopes.join(", "), rep.period),
                Some(b) => format!("fails at b={b}"),
            };
            let expected = if d == 4 { "slopes {3/4, 5/6, 1} period 24" } else { "slopes {5/6, 1} period 6" };
            Ok(Outcome::compare(expected, computed))
        });
    }

    let mut algebras: Vec<Option<NicholsAlgebra>> = vec![None, None];
    for (slot, d) in [3usize, 4].into_iter().enumerate() {
        r.run("nichols-hilbert", 6, &format!("d={d} groebner"), false, || {
            let alg = cache.nichols(d, rule_cap)?;
            let dims: Vec<u64> = alg.dims().iter().map(|&x| x as u64).collect();
            let o = Outcome::compare(format!("{:?}", expected_hilbert(d)?), format!("{dims:?}"));
            algebras[slot] = Some(alg);
            Ok(o)
        });
    }

    for (slot, (d, n_max)) in [(3usize, 5usize), (4, 6)].into_iter().enumerate() {
        r.run("two-route-hilbert", 7, &format!("d={d} n<={n_max} symmetrizer vs groebner"), false, || {
            let alg = algebras[slot]
                .as_ref()
                .ok_or_else(|| Error::Precondition("no rewrite system".into()))?;
            let sym = quantum_symmetrizer_dims(&Alphabet::new(d)?, n_max, RankMode::Auto, cfg.seed)?;
            let mut gb = alg.dims();
            gb.resize(n_max + 1, 0);
            let dims: Vec<usize> = sym.iter().map(|(x, _)| *x).collect();
            let mut o = Outcome::compare(format!("{gb:?}"), format!("{dims:?}"));
            if let Some((_, m)) = sym.iter().find(|(_, m)| *m != crate::linalg::RankMethod::Exact) {
                o.computed.push_str(&format!(" [{m}]"));
            }
            Ok(o)
        });
    }

    let mut windows = vec![(0usize, 10u32, 3), (1, 6, 4)];
    if opts.stretch {
        windows.push((1, 7, 4));
    }
    let mut geometric: Vec<Option<ExtTable>> = vec![None, None];
    for &(slot, b_max, d) in &windows {
        r.run("cohomology-vs-zeta", 8, &format!("d={d} geometric b<={b_max}"), true, || {
            let alg = algebras[slot]
                .as_ref()
                .ok_or_else(|| Error::Precondition("no rewrite system".into()))?;
            let (o, t) = cohomology_outcome(alg, b_max, &ext_opts)?;
            geometric[slot] = Some(t);
            Ok(o)
        });
    }

    for &(slot, b_max, d) in &[(0usize, 8usize, 3), (1, 6, 4)] {
        r.run("bosonization-even", 9, &format!("d={d} b<={b_max}"), true, || {
            let alg = algebras[slot]
                .as_ref()
                .ok_or_else(|| Error::Precondition("no rewrite system".into()))?;
            let geo = match &geometric[slot] {
                Some(t) => t.clone(),
                None => invariant_ext_dims(alg, ActionMode::Geometric, b_max, b_max, &ext_opts)?,
            };
            let std = invariant_ext_dims(alg, ActionMode::Standard, b_max, b_max, &ext_opts)?;
            let rep = bosonization_even_check(&std, &geo, b_max);
            let computed = if rep.passes() {
                format!("even columns agree; {} odd-b differences listed", rep.odd_differences.len())
            } else {
                format!("even mismatches: {:?}", rep.even_mismatches)
            };
            Ok(Outcome {
                expected: "even columns agree".into(),
                verdict: Verdict::from_bool(rep.passes()),
                computed,
            })
        });
    }

    let braid_budget = budgets.get_u64("braid");
    r.run("braid-orbits", 10, "d=3 n=2 transpositions", false, || {
        let rep = braid_orbits(3, 2, ClassKind::Transpositions, braid_budget)?;
        Ok(Outcome::compare("5 orbits, sizes [1, 1, 1, 3, 3]", format!("{} orbits, sizes {:?}", rep.orbit_count, rep.size_list())))
    });
    r.run("braid-relations", 10, "d=3 n=3 exhaustive", false, || {
        Ok(Outcome::compare(true, braid_relations_exhaustive(3, 3, ClassKind::Transpositions)?))
    });
    r.run("braid-h0", 10, "d=3 n=2 shuffle Ext^{2,2} vs coinvariants", false, || {
        let ext = shuffle_ext_small(3, 2, &ext_opts)?;
        let coinv = coinvariants_dim(3, 2, ClassKind::Transpositions, braid_budget)?;
        Ok(Outcome::compare(format!("H0 = {coinv}"), format!("H0 = {}", ext.get(2, 2))))
    });

    r.run("prop-discriminant-equivariance", 11, "d=3,4 rings fp:5,fp:7,trunc:5:3,trunc:7:2 1000 cases each", false, || {
        let rings = ["fp:5", "fp:7", "trunc:5:3", "trunc:7:2"];
        let mut bad = Vec::new();
        for d in [3, 4] {
            for (i, ring) in rings.iter().enumerate() {
                let ring: CoeffRing = ring.parse()?;
                let n = equivariance_failures(d, ring, 1000, cfg.seed.wrapping_add(i as u64))?;
                if n > 0 {
                    bad.push(format!("d={d} {ring:?}: {n} failures"));
                }
            }
        }
        Ok(Outcome::compare("0 failures", if bad.is_empty() { "0 failures".into() } else { bad.join("; ") }))
    });
    r.run("prop-braid-equation", 11, "d=3,4 exhaustive on V^{⊗3}", false, || {
        Ok(Outcome::compare(true, braid_equation_holds(&Alphabet::new(3)?) && braid_equation_holds(&Alphabet::new(4)?)))
    });
    r.run("prop-d-squared", 11, "d=3 b<=5, d=4 b<=4", false, || {
        let mut ok = true;
        for (slot, b_max) in [(0usize, 5usize), (1, 4)] {
            let alg = algebras[slot]
                .as_ref()
                .ok_or_else(|| Error::Precondition("no rewrite system".into()))?;
            let prods = GradedProducts::from_nichols(alg, b_max)?;
            for b in 2..=b_max {
                for a in 2..=b {
                    ok &= d_squared_vanishes(&prods, a, b)?;
                }
            }
        }
        Ok(Outcome::compare(true, ok))
    });
    r.run("prop-euler-characteristic", 11, "d=3 b<=7, d=4 b<=4", false, || {
        let mut bad = Vec::new();
        for (slot, b_max) in [(0usize, 7usize), (1, 4)] {
            let alg = algebras[slot]
                .as_ref()
                .ok_or_else(|| Error::Precondition("no rewrite system".into()))?;
            let table = ext_dims(alg, b_max, b_max, &ext_opts)?;
            for (b, alt, pred) in euler_characteristic_check(&alg.dims(), &table, b_max) {
                if alt != pred {
                    bad.push(format!("d={} b={b}: {alt} vs {pred}", alg.d));
                }
            }
        }
        Ok(Outcome::compare("identity holds", if bad.is_empty() { "identity holds".into() } else { bad.join("; ") }))
    });
    r.run("prop-etale-count", 11, "d<=8", false, || {
        let bad: Vec<u32> = (1..=8).filter(|&d| !etale_weighted_count(d).is_one()).collect();
        Ok(Outcome::compare("[]", format!("{bad:?}")))
    });

    VerdictReport {
        version: CODE_VERSION.to_string(),
        seed: cfg.seed,
        threads: cfg.threads,
        checks: r.checks,
    }
}
