//! File emission: the time-series CSV and the JSON summary report.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::harness::RunRecord;

/// Exact column order of the time-series CSV.
pub const CSV_HEADER: &str = "t,theta_ref,theta,theta_dot,error,sigma,u_eq,u_sw,u_applied";

/// Render the time series as CSV: LF line endings, full-precision decimal
/// floats (shortest round-trip form), and empty sigma/u_eq/u_sw cells for
/// runs without a sliding surface.
pub fn time_series_csv(record: &RunRecord) -> String {
    let log = &record.log;
    let n = log.len();
    let mut out = String::with_capacity(64 * (n + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    let opt_cell = |col: &Option<Vec<f64>>, i: usize| match col {
        Some(v) => format!("{}", v[i]),
        None => String::new(),
    };
    for i in 0..n {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            log.t[i],
            log.theta_ref[i],
            log.theta[i],
            log.theta_dot[i],
            log.error(i),
            opt_cell(&log.sigma, i),
            opt_cell(&log.u_eq, i),
            opt_cell(&log.u_sw, i),
            log.u[i],
        ));
    }
    out
}

/// Summary report: resolved scenario, metrics, and provenance, without the
/// bulky time series.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryReport<'a> {
    pub scenario: &'a crate::scenario::Scenario,
    pub metrics: &'a crate::metrics::MetricsSummary,
    pub range_exceeded: bool,
    pub provenance: &'a crate::harness::Provenance,
}

pub fn summary_json(record: &RunRecord) -> String {
    let report = SummaryReport {
        scenario: &record.scenario,
        metrics: &record.metrics,
        range_exceeded: record.range_exceeded,
        provenance: &record.provenance,
    };
    serde_json::to_string_pretty(&report).expect("report serializes")
}

/// Full record (scenario, metrics, provenance, and the complete log).
pub fn full_json(record: &RunRecord) -> String {
    serde_json::to_string_pretty(record).expect("record serializes")
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}
