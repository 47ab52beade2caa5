use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::run::BenchRow;
use crate::error::{Error, Result};

/// Column order of the CSV report.
pub const REPORT_COLUMNS: [&str; 9] =
    ["t_w_min", "t_e_min", "count", "mix", "objective_s", "time_s", "oracle_s", "gap_pct", "seed"];

/// CSV text for `rows`. Missing values are empty cells.
pub fn report_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_COLUMNS)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in rows {
        w.write_record([
            r.spec.t_w_min.to_string(),
            r.spec.t_e_min.to_string(),
            r.spec.count.to_string(),
            r.spec.mix.name().to_string(),
            opt(r.objective.map(|v| v.to_string())),
            format!("{:.3}", r.wall_time_s),
            opt(r.oracle_objective.map(|v| v.to_string())),
            opt(r.gap_pct.map(|g| format!("{g:.2}"))),
            r.spec.seed.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Per-configuration means over seeds.
pub fn report_summary(rows: &[BenchRow]) -> String {
    let mut groups: BTreeMap<(u32, u32, usize, &str), Vec<&BenchRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.spec.t_w_min, r.spec.t_e_min, r.spec.count, r.spec.mix.name())).or_default().push(r);
    }
    let mut out = String::from("t_w  t_e  count  mix           runs  failed  mean_obj_s  mean_time_s  max_time_s  mean_gap_pct\n");
    for ((tw, te, n, mix), rs) in groups {
        let ok: Vec<&&BenchRow> = rs.iter().filter(|r| r.objective.is_some()).collect();
        let mean = |v: &[f64]| if v.is_empty() { None } else { Some(v.iter().sum::<f64>() / v.len() as f64) };
        let obj = mean(&ok.iter().map(|r| r.objective.unwrap() as f64).collect::<Vec<_>>());
        let time = mean(&ok.iter().map(|r| r.wall_time_s).collect::<Vec<_>>());
        let max_time = ok.iter().map(|r| r.wall_time_s).fold(None, |m: Option<f64>, t| Some(m.map_or(t, |m| m.max(t))));
        let gap = mean(&rs.iter().filter_map(|r| r.gap_pct).collect::<Vec<_>>());
        let cell = |v: Option<f64>, p: usize| v.map_or("-".to_string(), |v| format!("{v:.p$}"));
        let _ = writeln!(
            out,
            "{tw:<4} {te:<4} {n:<6} {mix:<13} {:<5} {:<7} {:<11} {:<12} {:<11} {}",
            rs.len(),
            rs.len() - ok.len(),
            cell(obj, 1),
            cell(time, 3),
            cell(max_time, 3),
            cell(gap, 2),
        );
    }
    out
}

/// Path of the summary written next to a report at `path`.
pub fn summary_path(path: &Path) -> PathBuf {
    path.with_extension("summary.txt")
}

/// Writes the CSV to `path` and the summary to [`summary_path`].
pub fn write_report(rows: &[BenchRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Contract("no benchmark rows to report".into()));
    }
    std::fs::write(path, report_csv(rows)?)?;
    std::fs::write(summary_path(path), report_summary(rows))?;
    Ok(())
}
