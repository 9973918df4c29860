use std::fmt::Write as _;
use std::path::Path;

use super::experiment::{MetricsRow, RunReport};
use crate::{Error, OpCounts, Result};

pub const CSV_HEADER: &str =
    "heuristic,set_size,rep,iteration,sum,dp_cells,distance_evals,stat_updates,rep_updates,total_ops,wall_ms";

pub fn format_csv(report: &RunReport) -> String {
    let mut out = String::with_capacity(64 * (report.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        let c = &r.counts;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.heuristic,
            r.set_size,
            r.rep,
            r.iteration,
            r.sum,
            c.dp_cells,
            c.distance_evals,
            c.stat_updates,
            c.rep_updates,
            c.total(),
            r.wall_ms
        );
    }
    out
}

/// Writes the metrics rows as CSV. An empty report is an error and leaves
/// no file behind.
pub fn emit_csv(report: &RunReport, path: impl AsRef<Path>) -> Result<()> {
    if report.is_empty() {
        return Err(Error::Input("report has no rows".into()));
    }
    std::fs::write(path, format_csv(report))?;
    Ok(())
}

pub fn parse_csv(text: &str, path: &Path) -> Result<Vec<MetricsRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(Error::parse(path, 1, "missing metrics header")),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let err = |m: &str| Error::parse(path, i + 1, m);
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 11 {
                return Err(err("expected 11 fields"));
            }
            let int = |s: &str| s.parse::<u64>().map_err(|_| err("bad integer"));
            let real = |s: &str| s.parse::<f64>().map_err(|_| err("bad number"));
            let counts = OpCounts {
                dp_cells: int(f[5])?,
                distance_evals: int(f[6])?,
                stat_updates: int(f[7])?,
                rep_updates: int(f[8])?,
            };
            if counts.total() != int(f[9])? {
                return Err(err("total_ops does not match its parts"));
            }
            Ok(MetricsRow {
                heuristic: f[0].parse().map_err(|_| err("unknown heuristic"))?,
                set_size: int(f[1])? as usize,
                rep: int(f[2])? as usize,
                iteration: int(f[3])? as usize,
                sum: real(f[4])?,
                counts,
                wall_ms: real(f[10])?,
            })
        })
        .collect()
}

/// Drops the trailing wall-time column, leaving the deterministic part.
pub fn strip_wall_time(csv: &str) -> String {
    csv.lines()
        .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head))
        .fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        })
}
