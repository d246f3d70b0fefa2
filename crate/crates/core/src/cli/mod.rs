//! The `resolvent` command-line front end.

pub mod cache;
pub mod config;
pub mod export;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::braidhur::{braid_orbits, unmarked_orbits, ClassKind};
use crate::cohomology::{ext_dims, invariant_ext_dims, ExtOptions, ExtTable};
use crate::error::{Error, Result};
use crate::localzeta::{compare_row, CompareRow, McPlan};
use crate::nichols::{braid_equation_holds, expected_hilbert, quantum_symmetrizer_dims, ActionMode, Alphabet, RankMode};
use crate::prehomog::{disc3, disc4, BinaryCubic, CoeffRing, Fp, Ring, TernaryQuadPair, TruncRing};
use crate::qseries::{cohomology_table, conjecture5_violation, secondary_term_check, SeriesTable, Strength};
use crate::report::Verdict;
use verify::csv_field;

pub use cache::{Cache, DensityRequest, CODE_VERSION};
pub use config::{Budgets, Format, RunConfig, BUDGET_KEYS, DEFAULT_SEED};
pub use export::{export_tables, render_table, ExportKind};
pub use verify::{verify_all, CheckRecord, VerdictReport, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "resolvent", version, about = "Zeta expansions, local densities and Nichols algebra cohomology for cubic and quartic covers")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Result cache directory.
    #[arg(long, global = true, env = "RESOLVENT_CACHE_DIR", default_value = "cache")]
    pub cache_dir: PathBuf,
    /// Disable the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Override a budget, e.g. `--budget samples=1e6`. Keys: count, samples, braid, chains, rules.
    #[arg(long = "budget", global = true, value_name = "KEY=VALUE")]
    pub budgets: Vec<String>,
    #[arg(long, global = true, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tables and checks derived from the zeta functions.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Local densities by enumeration or sampling.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Hilbert series of the Nichols algebra and the braid equation.
    #[command(subcommand)]
    Nichols(NicholsCmd),
    /// Bar-complex cohomology of the Nichols algebra.
    #[command(subcommand)]
    Coh(CohCmd),
    /// Hurwitz orbits on tuples of transpositions.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Single discriminant evaluations.
    #[command(subcommand)]
    Prehomog(PrehomogCmd),
    /// Runs every acceptance check and prints a verdict report.
    VerifyAll(VerifyArgs),
    /// Writes table files.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 12)]
    pub bmax: usize,
}

#[derive(Debug, Subcommand)]
pub enum ZetaCmd {
    Local(TableArgs),
    Global(TableArgs),
    Cohomology(TableArgs),
    Betti(TableArgs),
    CheckSecondary {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 220)]
        bmax: usize,
    },
    CheckConjecture5 {
        /// JSON series table as written by `export`.
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "a")]
        strength: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    Density {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, conflicts_with = "samples")]
        exact: bool,
        #[arg(long)]
        samples: Option<String>,
    },
    Compare {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        exact_bmax: Option<u32>,
        /// Monte-Carlo plan such as `b=3:1e8,b=4:1e6`.
        #[arg(long, default_value = "")]
        mc: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum NicholsCmd {
    Hilbert {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "both")]
        method: String,
        /// Highest degree for the symmetrizer route.
        #[arg(long)]
        nmax: Option<usize>,
    },
    CheckBraid {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CohCmd {
    Ext {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        bmax: usize,
        #[arg(long, default_value = "geometric")]
        invariants: String,
    },
    Check {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        bmax: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BraidCmd {
    Orbits {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "transpositions")]
        class: String,
        #[arg(long)]
        unmarked: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum PrehomogCmd {
    /// Discriminant of a binary cubic; `--coeffs a,b,c,d`.
    Disc3(DiscArgs),
    /// Discriminant of a pair of ternary quadratic forms; twelve coefficients
    /// `a00,a11,a22,a01,a02,a12,b00,…`.
    Disc4(DiscArgs),
}

#[derive(Debug, Args)]
pub struct DiscArgs {
    /// `fp:P` or `trunc:P:N`.
    #[arg(long)]
    pub ring: String,
    /// Comma-separated coordinates; over `trunc:P:N` each may be `c0/c1/…` in powers of t.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub skip_heavy: bool,
    /// Include the d=4, b=7 cohomology window.
    #[arg(long)]
    pub stretch: bool,
    /// Record per-check runtimes in the report.
    #[arg(long)]
    pub timings: bool,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub bmin: usize,
    #[arg(long)]
    pub bmax: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// What a subcommand produced.
pub struct Output {
    pub text: String,
    pub mismatch: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, mismatch: false }
    }
}

/// `2` for errors caused by the invocation, `1` otherwise.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::UnsupportedDegree(_)
        | Error::Precondition(_)
        | Error::IndexOutOfRange { .. }
        | Error::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

pub fn config_from(cli: &Cli) -> Result<RunConfig> {
    Ok(RunConfig {
        threads: cli.threads,
        cache_dir: (!cli.no_cache).then(|| cli.cache_dir.clone()),
        seed: cli.seed,
        budgets: Budgets::with_overrides(&cli.budgets)?,
        format: cli.format,
    })
}

/// Parses, runs and prints; returns the process exit code.
pub fn run_main<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = config_from(&cli).and_then(|cfg| {
        if let Some(n) = cfg.threads {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("thread pool already initialised: {e}");
            }
        }
        run(&cli.command, &cfg)
    });
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            i32::from(o.mismatch)
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// One record: pretty JSON, or a header line plus one CSV row of its top-level fields.
fn render<T: Serialize>(v: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(v),
        Format::Csv => {
            let value = serde_json::to_value(v)?;
            let Value::Object(fields) = value else {
                return Ok(csv_cell(&value) + "\n");
            };
            let header: Vec<&str> = fields.keys().map(String::as_str).collect();
            let row: Vec<String> = fields.values().map(csv_cell).collect();
            Ok(format!("{}\n{}\n", header.join(","), row.join(",")))
        }
    }
}

fn csv_cell(v: &Value) -> String {
    let scalar = |v: &Value| match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let text = match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            xs.iter().map(scalar).collect::<Vec<_>>().join(";")
        }
        Value::Object(m) if m.values().all(|x| !x.is_array() && !x.is_object()) => {
            m.iter().map(|(k, x)| format!("{k}:{}", scalar(x))).collect::<Vec<_>>().join(";")
        }
        Value::Array(_) | Value::Object(_) => v.to_string(),
        other => scalar(other),
    };
    csv_field(&text)
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    let cache = Cache::new(cfg.cache_dir.clone(), cfg.seed);
    let budgets = &cfg.budgets;
    let ext_opts = ExtOptions {
        chain_budget: budgets.get_usize("chains"),
        prime_seed: cfg.seed,
        ..ExtOptions::default()
    };
    match cmd {
        Command::Zeta(z) => zeta(z, cfg),
        Command::Oracle(OracleCmd::Density { d, p, b, exact, samples }) => {
            let req = match (exact, samples) {
                (_, Some(n)) => DensityRequest::MonteCarlo {
                    samples: config::parse_count(n)? as u64,
                    seed: cfg.seed,
                },
                _ => DensityRequest::Exact { budget: budgets.get("count") },
            };
            let row = compare_row(&cache.density(*d, *p, *b, req)?)?;
            let mismatch = row.verdict.is_failure();
            Ok(Output {
                text: render_compare(&[row], cfg.format)?,
                mismatch,
            })
        }
        Command::Oracle(OracleCmd::Compare { d, p, exact_bmax, mc }) => {
            let plan = McPlan::parse(mc, cfg.seed)?;
            let mut rows = Vec::new();
            for b in 0..=exact_bmax.unwrap_or(0) {
                if exact_bmax.is_none() {
                    break;
                }
                rows.push(compare_row(&cache.density(*d, *p, b, DensityRequest::Exact { budget: budgets.get("count") })?)?);
            }
            for &(b, samples) in &plan.runs {
                rows.push(compare_row(&cache.density(*d, *p, b, DensityRequest::MonteCarlo { samples, seed: plan.seed })?)?);
            }
            let mismatch = rows.iter().any(|r| r.verdict.is_failure());
            Ok(Output {
                text: render_compare(&rows, cfg.format)?,
                mismatch,
            })
        }
        Command::Nichols(NicholsCmd::Hilbert { d, method, nmax }) => {
            #[derive(Serialize)]
            struct Hilbert {
                d: usize,
                expected: Vec<u64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                groebner: Option<Vec<usize>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                rules: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                symmetrizer: Option<Vec<usize>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                symmetrizer_methods: Option<Vec<String>>,
                verdict: Verdict,
            }
            let expected = expected_hilbert(*d)?;
            let (use_gb, use_sym) = match method.as_str() {
                "groebner" => (true, false),
                "symmetrizer" => (false, true),
                "both" => (true, true),
                other => return Err(Error::Parse(format!("method must be symmetrizer, groebner or both; got {other:?}"))),
            };
            let alg = use_gb.then(|| cache.nichols(*d, budgets.get_usize("rules"))).transpose()?;
            let n_max = nmax.unwrap_or(if *d == 3 { 5 } else { 6 });
            let sym = use_sym
                .then(|| quantum_symmetrizer_dims(&Alphabet::new(*d)?, n_max, RankMode::Auto, cfg.seed))
                .transpose()?;
            let groebner = alg.as_ref().map(|a| a.dims());
            let mut ok = true;
            if let Some(g) = &groebner {
                ok &= g.iter().map(|&x| x as u64).eq(expected.iter().copied());
            }
            if let Some(s) = &sym {
                ok &= s.iter().zip(&expected).all(|((x, _), &e)| *x as u64 == e);
            }
            let h = Hilbert {
                d: *d,
                rules: alg.as_ref().map(|a| a.system.rule_count()),
                groebner,
                symmetrizer: sym.as_ref().map(|s| s.iter().map(|(x, _)| *x).collect()),
                symmetrizer_methods: sym.as_ref().map(|s| s.iter().map(|(_, m)| m.to_string()).collect()),
                verdict: Verdict::from_bool(ok),
                expected,
            };
            Ok(Output {
                text: render(&h, cfg.format)?,
                mismatch: !ok,
            })
        }
        Command::Nichols(NicholsCmd::CheckBraid { d }) => {
            let ok = braid_equation_holds(&Alphabet::new(*d)?);
            Ok(Output {
                text: render(&serde_json::json!({ "d": d, "braid_equation": ok }), cfg.format)?,
                mismatch: !ok,
            })
        }
        Command::Coh(CohCmd::Ext { d, bmax, invariants }) => {
            let alg = cache.nichols(*d, budgets.get_usize("rules"))?;
            let full = ext_dims(&alg, *bmax, *bmax, &ext_opts)?;
            let inv = match invariants.as_str() {
                "none" => None,
                "geometric" => Some(invariant_ext_dims(&alg, ActionMode::Geometric, *bmax, *bmax, &ext_opts)?),
                "standard" => Some(invariant_ext_dims(&alg, ActionMode::Standard, *bmax, *bmax, &ext_opts)?),
                other => return Err(Error::Parse(format!("invariants must be geometric, standard or none; got {other:?}"))),
            };
            let predicted = (invariants == "geometric").then(|| cohomology_table(*d as u32, *bmax as u32, *bmax as u32)).transpose()?;
            let rows = coh_rows(*bmax, Some(&full), inv.as_ref(), predicted.as_ref());
            let mismatch = rows.iter().any(|r| r.verdict.is_some_and(|v| v.is_failure()));
            Ok(Output {
                text: render_coh(&rows, cfg.format, &full, inv.as_ref())?,
                mismatch,
            })
        }
        Command::Coh(CohCmd::Check { d, bmax }) => {
            let alg = cache.nichols(*d, budgets.get_usize("rules"))?;
            let inv = invariant_ext_dims(&alg, ActionMode::Geometric, *bmax, *bmax, &ext_opts)?;
            let predicted = cohomology_table(*d as u32, *bmax as u32, *bmax as u32)?;
            let rows = coh_rows(*bmax, None, Some(&inv), Some(&predicted));
            let mismatch = rows.iter().any(|r| r.verdict.is_some_and(|v| v.is_failure()));
            let empty = ExtTable {
                dims: Default::default(),
                methods: Default::default(),
            };
            Ok(Output {
                text: render_coh(&rows, cfg.format, &empty, Some(&inv))?,
                mismatch,
            })
        }
        Command::Braid(BraidCmd::Orbits { d, n, class, unmarked }) => {
            let kind: ClassKind = class.parse()?;
            let budget = budgets.get_u64("braid");
            let rep = if *unmarked {
                unmarked_orbits(*d, *n, kind, budget)?
            } else {
                braid_orbits(*d, *n, kind, budget)?
            };
            Ok(Output::ok(render(&rep, cfg.format)?))
        }
        Command::Prehomog(cmd) => prehomog(cmd, cfg.format),
        Command::VerifyAll(args) => {
            let opts = VerifyOptions {
                skip_heavy: args.skip_heavy,
                stretch: args.stretch,
                record_runtimes: args.timings,
            };
            let report = verify_all(cfg, &cache, &opts);
            let text = match cfg.format {
                Format::Json => to_json(&report)?,
                Format::Csv => report.to_csv(),
            };
            if let Some(path) = &args.out {
                std::fs::write(path, &text).map_err(|e| Error::io(path, e))?;
            }
            Ok(Output {
                mismatch: report.has_mismatch(),
                text,
            })
        }
        Command::Export(args) => {
            let kind: ExportKind = args.kind.parse()?;
            let path = export_tables(kind, args.d, args.bmin, args.bmax, cfg.format, &args.out, budgets.get_u64("braid"))?;
            Ok(Output::ok(format!("{}\n", path.display())))
        }
    }
}

fn zeta(cmd: &ZetaCmd, cfg: &RunConfig) -> Result<Output> {
    let table = |kind: ExportKind, a: &TableArgs| render_table(kind, a.d, 0, a.bmax, cfg.format, cfg.budgets.get_u64("braid"));
    match cmd {
        ZetaCmd::Local(a) => Ok(Output::ok(table(ExportKind::Local, a)?)),
        ZetaCmd::Global(a) => Ok(Output::ok(table(ExportKind::Global, a)?)),
        ZetaCmd::Cohomology(a) => Ok(Output::ok(table(ExportKind::Cohomology, a)?)),
        ZetaCmd::Betti(a) => Ok(Output::ok(table(ExportKind::Betti, a)?)),
        ZetaCmd::CheckSecondary { d, bmax } => {
            let rep = secondary_term_check(*d, *bmax)?;
            Ok(Output {
                mismatch: !rep.passes(),
                text: render(&rep, cfg.format)?,
            })
        }
        ZetaCmd::CheckConjecture5 { file, strength } => {
            let strength: Strength = strength.parse()?;
            let text = std::fs::read_to_string(file).map_err(|e| Error::io(file, e))?;
            let table: SeriesTable = serde_json::from_str(&text)?;
            let violation = conjecture5_violation(&table.to_series()?, strength)?;
            let body = serde_json::json!({
                "strength": format!("{strength:?}").to_lowercase(),
                "holds": violation.is_none(),
                "violation": violation.map(|(a, b)| serde_json::json!({"a": a, "b": b})),
            });
            Ok(Output {
                mismatch: violation.is_some(),
                text: render(&body, cfg.format)?,
            })
        }
    }
}

fn render_compare(rows: &[CompareRow], format: Format) -> Result<String> {
    match format {
        Format::Json if rows.len() == 1 => to_json(&rows[0]),
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = String::from("d,p,b,mode,count,coefficient,predicted,std_error,verdict\n");
            for r in rows {
                let se = r.std_error.map(|x| x.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.d, r.p, r.b, r.mode, r.count, r.coefficient, r.predicted, se, r.verdict
                ));
            }
            Ok(out)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohRow {
    pub a: u32,
    pub b: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_dim: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

pub fn coh_rows(
    b_max: usize,
    full: Option<&ExtTable>,
    inv: Option<&ExtTable>,
    predicted: Option<&crate::table::BigradedTable>,
) -> Vec<CohRow> {
    let mut rows = Vec::new();
    for b in 0..=b_max as u32 {
        for a in 0..=b {
            let invariant_dim = inv.map(|t| t.get(a, b));
            let pred = predicted.map(|t| t.get(a, b));
            let verdict = match (invariant_dim, pred) {
                (Some(x), Some(y)) => Some(Verdict::from_bool(x == y)),
                _ => None,
            };
            rows.push(CohRow {
                a,
                b,
                dim: full.map(|t| t.get(a, b)),
                invariant_dim,
                predicted: pred,
                verdict,
            });
        }
    }
    rows
}

fn render_coh(rows: &[CohRow], format: Format, full: &ExtTable, inv: Option<&ExtTable>) -> Result<String> {
    let mut methods = Vec::new();
    if !full.methods.is_empty() {
        methods.push(format!("full: {}", full.method_label()));
    }
    if let Some(t) = inv {
        methods.push(format!("invariant: {}", t.method_label()));
    }
    match format {
        Format::Json => to_json(&serde_json::json!({ "rank_method": methods.join("; "), "rows": rows })),
        Format::Csv => {
            let cell = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
            let mut out = String::from("a,b,dim,invariant_dim,predicted,verdict\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.a,
                    r.b,
                    cell(r.dim),
                    cell(r.invariant_dim),
                    cell(r.predicted),
                    r.verdict.map(|v| v.to_string()).unwrap_or_default()
                ));
            }
            Ok(out)
        }
    }
}

fn prehomog(cmd: &PrehomogCmd, format: Format) -> Result<Output> {
    let (args, d) = match cmd {
        PrehomogCmd::Disc3(a) => (a, 3),
        PrehomogCmd::Disc4(a) => (a, 4),
    };
    let ring: CoeffRing = args.ring.parse()?;
    let entries: Vec<Vec<i64>> = args
        .coeffs
        .split(',')
        .map(|e| {
            e.trim()
                .split('/')
                .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient {e:?}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    let want = if d == 3 { 4 } else { 12 };
    if entries.len() != want {
        return Err(Error::Parse(format!("disc{d} needs {want} coefficients, got {}", entries.len())));
    }
    let value: Vec<u32> = match ring {
        CoeffRing::Prime(p) => {
            if entries.iter().any(|e| e.len() != 1) {
                return Err(Error::Parse("t-expansions need a trunc:P:N ring".into()));
            }
            let r = Fp::new(p)?;
            let xs: Vec<u32> = entries.iter().map(|e| r.from_i64(e[0])).collect();
            vec![evaluate(&r, d, &xs)]
        }
        CoeffRing::Truncated { p, n } => {
            let r = TruncRing::new(p, n)?;
            if entries.iter().any(|e| e.len() > n) {
                return Err(Error::Parse(format!("t-expansions longer than the truncation order {n}")));
            }
            let xs: Vec<_> = entries.iter().map(|e| r.elem(e)).collect();
            evaluate(&r, d, &xs).0[..n].to_vec()
        }
    };
    let body = serde_json::json!({ "d": d, "ring": args.ring, "discriminant": value });
    Ok(Output::ok(render(&body, format)?))
}

fn evaluate<R: Ring>(r: &R, d: u32, xs: &[R::Elem]) -> R::Elem {
    if d == 3 {
        disc3(r, &BinaryCubic::from_coeffs([xs[0], xs[1], xs[2], xs[3]]))
    } else {
        disc4(r, &TernaryQuadPair::new(std::array::from_fn(|i| xs[i])))
    }
}
