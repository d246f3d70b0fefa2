use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn resolvent(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_resolvent"));
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.args(args).env_remove("RESOLVENT_CACHE_DIR").env("RUST_LOG", "warn");
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn unsupported_degree_exits_with_usage_code() {
    let o = resolvent(None, &["zeta", "local", "--d", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degree 5 is not supported"), "{}", stderr(&o));
}

#[test]
fn bad_arguments_exit_with_usage_code() {
    assert_eq!(resolvent(None, &["zeta", "local"]).status.code(), Some(2));
    assert_eq!(resolvent(None, &["--budget", "samples=-3", "zeta", "local", "--d", "3"]).status.code(), Some(2));
    assert_eq!(resolvent(None, &["prehomog", "disc3", "--ring", "fp:6", "--coeffs", "1,0,0,1"]).status.code(), Some(2));
}

#[test]
fn budget_override_is_enforced() {
    let o = resolvent(None, &["--budget", "count=1000", "oracle", "density", "--d", "3", "--p", "5", "--b", "2", "--exact"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget exceeded"), "{}", stderr(&o));
}

#[test]
fn local_table_as_csv() {
    let o = resolvent(None, &["--format", "csv", "zeta", "local", "--d", "3", "--bmax", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "b,poly");
    assert_eq!(lines[7], "6,0:3;1:1");
    assert_eq!(lines.len(), 9);
}

#[test]
fn corrupted_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["oracle", "density", "--d", "3", "--p", "5", "--b", "1", "--exact"];
    let first = resolvent(Some(dir.path()), &args);
    assert!(first.status.success(), "{}", stderr(&first));
    let entry = dir.path().join("density/d3-p5-b1.json");
    assert!(entry.exists());

    fs::write(&entry, "{ not json").unwrap();
    let second = resolvent(Some(dir.path()), &args);
    assert!(second.status.success(), "{}", stderr(&second));
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stderr(&second).contains("corrupted"), "{}", stderr(&second));
    let repaired: Value = serde_json::from_str(&fs::read_to_string(&entry).unwrap()).unwrap();
    assert_eq!(repaired["value"]["count"], Value::from(60000));
}

#[test]
fn stale_cache_version_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["oracle", "density", "--d", "3", "--p", "7", "--b", "0", "--exact"];
    let first = resolvent(Some(dir.path()), &args);
    let entry = dir.path().join("density/d3-p7-b0.json");
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&entry).unwrap()).unwrap();
    v["version"] = Value::from("resolvent/0.0.0");
    v["value"]["count"] = Value::from(1);
    fs::write(&entry, v.to_string()).unwrap();
    let second = resolvent(Some(dir.path()), &args);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn sampling_is_reproducible_from_the_seed() {
    let run = |seed: &str| {
        let o = resolvent(None, &["--seed", seed, "oracle", "density", "--d", "3", "--p", "5", "--b", "1", "--samples", "2e4"]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
    };
    assert_eq!(run("11"), run("11"));
    assert_ne!(run("11"), run("12"));
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        let o = resolvent(None, &["--threads", threads, "--seed", "5", "oracle", "density", "--d", "4", "--p", "5", "--b", "1", "--samples", "3e4"]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn empty_export_range_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = resolvent(None, &["--format", "csv", "export", "--kind", "global", "--d", "4", "--bmin", "5", "--bmax", "2", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(dir.path().join("global-d4.csv")).unwrap(), "b,poly\n");

    let o = resolvent(None, &["export", "--kind", "betti", "--d", "3", "--bmin", "3", "--bmax", "1", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("betti-d3.json")).unwrap()).unwrap();
    assert_eq!(v["rows"], Value::Array(vec![]));
}

#[test]
fn export_round_trips_through_the_conjecture_checker() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = resolvent(None, &["export", "--kind", "global", "--d", "4", "--bmax", "30", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let file = dir.path().join("global-d4.json");
    let o = resolvent(None, &["zeta", "check-conjecture5", "--file", file.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["holds"].is_boolean());
}

#[test]
fn skip_heavy_report_marks_skipped_checks() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = resolvent(Some(dir.path()), &["verify-all", "--skip-heavy", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}\n{}", stdout(&o), stderr(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let verdict = |id: &str| -> Vec<String> {
        checks
            .iter()
            .filter(|c| c["check_id"] == id)
            .map(|c| c["verdict"].as_str().unwrap().to_string())
            .collect()
    };
    assert!(verdict("cohomology-vs-zeta").iter().all(|v| v == "skipped"));
    assert!(verdict("local-oracle-d4-exact").iter().all(|v| v == "skipped"));
    assert_eq!(verdict("igusa-expansion"), ["match"]);
    assert!(checks.iter().all(|c| c["verdict"] != "mismatch"));
    // Without --timings the report is byte-stable.
    assert!(checks.iter().all(|c| c.get("runtime_ms").is_none_or(Value::is_null)));
}
