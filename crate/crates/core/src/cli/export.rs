//! Static table files for downstream diffing.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::config::Format;
use super::verify::csv_field;
use crate::braidhur::{braid_orbits, ClassKind, OrbitReport};
use crate::error::{Error, Result};
use crate::qseries::{betti_numbers, cohomology_series, global_table, local_table, SeriesTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportKind {
    Local,
    Global,
    Cohomology,
    Betti,
    Orbits,
}

impl FromStr for ExportKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "local" => ExportKind::Local,
            "global" => ExportKind::Global,
            "cohomology" => ExportKind::Cohomology,
            "betti" => ExportKind::Betti,
            "orbits" => ExportKind::Orbits,
            other => {
                return Err(Error::Parse(format!(
                    "kind must be local, global, cohomology, betti or orbits; got {other:?}"
                )))
            }
        })
    }
}

impl ExportKind {
    pub fn name(self) -> &'static str {
        match self {
            ExportKind::Local => "local",
            ExportKind::Global => "global",
            ExportKind::Cohomology => "cohomology",
            ExportKind::Betti => "betti",
            ExportKind::Orbits => "orbits",
        }
    }
}

#[derive(Serialize)]
struct BettiRow {
    b: usize,
    betti: Vec<i64>,
}

#[derive(Serialize)]
struct OrbitRow {
    n: usize,
    #[serde(flatten)]
    report: OrbitReport,
}

#[derive(Serialize)]
struct Rows<T> {
    d: u32,
    kind: &'static str,
    rows: Vec<T>,
}

/// Renders the rows `b_min ..= b_max` (for orbits: tuple lengths). An empty range gives a
/// header-only CSV or an empty `rows` array.
pub fn render_table(kind: ExportKind, d: u32, b_min: usize, b_max: usize, format: Format, braid_budget: u64) -> Result<String> {
    let range: Vec<usize> = (b_min..=b_max).collect();
    let top = b_max.max(b_min);
    let series_table = |s: crate::qseries::TruncatedTSeries| {
        let mut t = SeriesTable::from_series(d, kind.name(), &s);
        t.rows.retain(|r| range.contains(&r.b));
        t
    };
    Ok(match kind {
        ExportKind::Local | ExportKind::Global | ExportKind::Cohomology => {
            let s = match kind {
                ExportKind::Local => local_table(d, top)?,
                ExportKind::Global => global_table(d, top)?,
                _ => cohomology_series(d, top)?,
            };
            let t = series_table(s);
            match format {
                Format::Csv => t.to_csv(),
                Format::Json => serde_json::to_string_pretty(&t)? + "\n",
            }
        }
        ExportKind::Betti => {
            let rows = range
                .iter()
                .map(|&b| Ok(BettiRow { b, betti: betti_numbers(d, b)? }))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Csv => {
                    let mut out = String::from("b,betti\n");
                    for r in &rows {
                        let v: Vec<String> = r.betti.iter().map(|x| x.to_string()).collect();
                        out.push_str(&format!("{},{}\n", r.b, v.join(";")));
                    }
                    out
                }
                Format::Json => serde_json::to_string_pretty(&Rows { d, kind: "betti", rows })? + "\n",
            }
        }
        ExportKind::Orbits => {
            let rows = range
                .iter()
                .map(|&n| {
                    Ok(OrbitRow {
                        n,
                        report: braid_orbits(d as usize, n, ClassKind::Transpositions, braid_budget)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Csv => {
                    let mut out = String::from("n,orbits,sizes,by_product_class\n");
                    for r in &rows {
                        let sizes: Vec<String> = r.report.orbit_sizes.iter().map(|(s, c)| format!("{s}:{c}")).collect();
                        let classes: Vec<String> =
                            r.report.with_product_classes.iter().map(|(s, c)| format!("{s}:{c}")).collect();
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            r.n,
                            r.report.orbit_count,
                            sizes.join(";"),
                            csv_field(&classes.join(";"))
                        ));
                    }
                    out
                }
                Format::Json => serde_json::to_string_pretty(&Rows { d, kind: "orbits", rows })? + "\n",
            }
        }
    })
}

/// Writes `{kind}-d{d}.{csv|json}` under `dir` and returns its path.
pub fn export_tables(
    kind: ExportKind,
    d: u32,
    b_min: usize,
    b_max: usize,
    format: Format,
    dir: &Path,
    braid_budget: u64,
) -> Result<PathBuf> {
    let body = render_table(kind, d, b_min, b_max, format, braid_budget)?;
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(format!("{}-d{d}.{ext}", kind.name()));
    fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}
