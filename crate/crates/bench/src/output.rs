//! CSV tables and JSON provenance sidecars.

use anyhow::{Context, Result};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::run::{CellRecord, TraceRow};
use crate::spec::ExperimentSpec;

pub const TRACE_HEADER: &str = "algorithm,iteration,residual";
pub const CELL_HEADER: &str =
    "m,n,k,algorithm,epsilon,lambda,iters,trials,successes,rate,mean_iters_success,failures_numeric";
/// Bumped whenever a CSV header or column meaning changes.
pub const SCHEMA_VERSION: u32 = 1;

pub fn write_cells<W: Write>(records: &[CellRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(CELL_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace<W: Write>(rows: &[TraceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(TRACE_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn cells_to_string(records: &[CellRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_cells(records, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub toolkit: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub timestamp_unix: u64,
    pub master_seed: u64,
}

impl Provenance {
    pub fn now(master_seed: u64) -> Self {
        Self {
            toolkit: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            master_seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Sidecar<'a, S: Serialize> {
    pub provenance: Provenance,
    pub spec: &'a ExperimentSpec,
    pub csv: String,
    pub summary: S,
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsht::Algorithm;

    #[test]
    fn cell_header_is_pinned() {
        let r = CellRecord {
            m: 100,
            n: 200,
            k: 10,
            algorithm: Algorithm::Nshtp,
            epsilon: 1.0,
            lambda: 1.5,
            iters: 50,
            trials: 4,
            successes: 0,
            rate: 0.0,
            mean_iters_success: None,
            failures_numeric: 1,
        };
        let text = cells_to_string(&[r]).unwrap();
        assert_eq!(
            text,
            format!("{CELL_HEADER}\n100,200,10,nshtp,1.0,1.5,50,4,0,0.0,,1\n")
        );
        assert_eq!(cells_to_string(&[]).unwrap(), format!("{CELL_HEADER}\n"));
    }

    #[test]
    fn trace_header_is_pinned() {
        let mut buf = Vec::new();
        let rows = [TraceRow {
            algorithm: Algorithm::Htp,
            iteration: 3,
            residual: 0.25,
        }];
        write_trace(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{TRACE_HEADER}\nhtp,3,0.25\n"));
    }
}
