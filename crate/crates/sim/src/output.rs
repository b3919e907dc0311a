//! On-disk artifacts: JSONL event logs and CSV/JSON metric tables.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crowdvet_core::{EventLog, LedgerError};
use serde::Serialize;
use thiserror::Error;

use crate::compare::Comparison;
use crate::config::SimulationConfig;
use crate::metrics::{MetricsSummary, RunMetrics};

pub const EVENTS_FILE: &str = "events.jsonl";

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: {source}")]
    Ledger {
        path: PathBuf,
        #[source]
        source: LedgerError,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> OutputError + '_ {
    move |source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, OutputError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

pub fn write_log(path: &Path, log: &EventLog) -> Result<(), OutputError> {
    let mut out = create(path)?;
    log.write_jsonl(&mut out).map_err(|source| OutputError::Ledger {
        path: path.to_path_buf(),
        source,
    })?;
    out.flush().map_err(io_err(path))
}

pub fn read_log(path: &Path) -> Result<EventLog, OutputError> {
    let file = File::open(path).map_err(io_err(path))?;
    EventLog::read_jsonl(std::io::BufReader::new(file)).map_err(|source| OutputError::Ledger {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), OutputError> {
    let csv_err = |source| OutputError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err(path))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), OutputError> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| OutputError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    })?;
    out.write_all(b"\n").map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

pub fn ensure_dir(dir: &Path) -> Result<(), OutputError> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

/// Writes the metric tables of one run.
pub fn write_metrics(dir: &Path, metrics: &RunMetrics) -> Result<(), OutputError> {
    ensure_dir(dir)?;
    write_summary(&dir.join("metrics.csv"), &metrics.summary)?;
    write_json(&dir.join("metrics.json"), &metrics.summary)?;
    write_csv(&dir.join("timeseries.csv"), &metrics.windows)?;
    write_csv(&dir.join("programs.csv"), &metrics.program_windows)
}

fn write_summary(path: &Path, summary: &MetricsSummary) -> Result<(), OutputError> {
    write_csv(path, std::slice::from_ref(summary))
}

/// Writes the log, the resolved configuration and the metric tables of one run.
pub fn write_run(
    dir: &Path,
    config: &SimulationConfig,
    log: &EventLog,
    metrics: &RunMetrics,
) -> Result<(), OutputError> {
    ensure_dir(dir)?;
    write_log(&dir.join(EVENTS_FILE), log)?;
    let toml = config.to_toml();
    fs::write(dir.join("config.toml"), toml).map_err(io_err(&dir.join("config.toml")))?;
    write_metrics(dir, metrics)
}

pub fn write_comparison(dir: &Path, comparison: &Comparison) -> Result<(), OutputError> {
    ensure_dir(dir)?;
    write_csv(&dir.join("summary.csv"), &comparison.stats)?;
    write_csv(&dir.join("paired.csv"), &comparison.paired)?;
    write_json(&dir.join("comparison.json"), comparison)?;

    // one row per run, metric columns flattened
    let path = dir.join("runs.csv");
    let csv_err = |source| OutputError::Csv {
        path: path.clone(),
        source,
    };
    let mut w = csv::Writer::from_path(&path).map_err(csv_err)?;
    if let Some(first) = comparison.runs.first() {
        let mut header = vec!["arm".to_string(), "seed".to_string()];
        header.extend(first.summary.fields().into_iter().map(|(k, _)| k));
        w.write_record(&header).map_err(csv_err)?;
    }
    for run in &comparison.runs {
        let mut record = vec![run.arm.clone(), run.seed.to_string()];
        record.extend(run.summary.fields().into_iter().map(|(_, v)| v.to_string()));
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(io_err(&path))
}
