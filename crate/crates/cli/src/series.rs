//! Long-format series files: header `series_id,t_index,value`, one row per
//! observation, `t_index` 0-based.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use covclust::eval::ExperimentTable;
use covclust::{Clustering, SamplePath};

use crate::error::{CliError, Result};

pub const SERIES_HEADER: &str = "series_id,t_index,value";

/// Whether ragged series lengths are acceptable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IngestMode {
    /// All series must share one length.
    Offline,
    Online,
}

/// Shortest representation that still carries 17 significant digits.
pub fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Reads a series file; series keep the order of their first appearance.
/// Observations are placed on the grid `delta_t, 2·delta_t, …`.
pub fn ingest_series(path: &Path, mode: IngestMode, delta_t: f64) -> Result<Vec<SamplePath<f64>>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_series(&text, path, mode, delta_t)
}

pub fn parse_series(text: &str, origin: &Path, mode: IngestMode, delta_t: f64) -> Result<Vec<SamplePath<f64>>> {
    let parse_err = |line: u64, message: String| CliError::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| parse_err(1, e.to_string()))?;
    if header.iter().collect::<Vec<_>>() != ["series_id", "t_index", "value"] {
        return Err(parse_err(1, format!("expected header `{SERIES_HEADER}`")));
    }

    let mut order: Vec<String> = Vec::new();
    let mut series: HashMap<String, Vec<Option<f64>>> = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(parse_err(line, "empty series_id".into()));
        }
        let index: usize = record[1]
            .parse()
            .map_err(|_| parse_err(line, format!("t_index `{}` is not a non-negative integer", &record[1])))?;
        let value: f64 = record[2]
            .parse()
            .map_err(|_| parse_err(line, format!("value `{}` is not a number", &record[2])))?;
        if !value.is_finite() {
            return Err(parse_err(line, format!("value `{}` is not finite", &record[2])));
        }
        let slots = series.entry(id.clone()).or_insert_with(|| {
            order.push(id.clone());
            Vec::new()
        });
        if slots.len() <= index {
            slots.resize(index + 1, None);
        }
        if slots[index].replace(value).is_some() {
            return Err(parse_err(line, format!("duplicate row for ({id}, {index})")));
        }
    }

    let mut paths = Vec::with_capacity(order.len());
    for id in order {
        let slots = &series[&id];
        let values = slots
            .iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| CliError::Config(format!("series {id} has no value at t_index {k}"))))
            .collect::<Result<Vec<_>>>()?;
        paths.push(SamplePath::new(id, values, delta_t, delta_t)?);
    }
    if paths.is_empty() {
        return Err(CliError::Config(format!("{} contains no series", origin.display())));
    }
    if mode == IngestMode::Offline {
        let n = paths[0].len();
        if let Some(p) = paths.iter().find(|p| p.len() != n) {
            return Err(CliError::Config(format!(
                "offline mode needs equal lengths: {} has {} values, {} has {}",
                paths[0].id,
                n,
                p.id,
                p.len()
            )));
        }
    }
    Ok(paths)
}

pub fn render_series(paths: &[SamplePath<f64>]) -> String {
    let mut out = String::from(SERIES_HEADER);
    out.push('\n');
    for p in paths {
        for (k, &v) in p.values.iter().enumerate() {
            let _ = writeln!(out, "{},{k},{}", p.id, fmt_value(v));
        }
    }
    out
}

/// `series_id,cluster_label,center_flag`; labels are 1-based.
pub fn render_assignments(paths: &[SamplePath<f64>], clustering: &Clustering) -> String {
    let mut out = String::from("series_id,cluster_label,center_flag\n");
    for (i, p) in paths.iter().enumerate() {
        let center = u8::from(clustering.centers.contains(&i));
        let _ = writeln!(out, "{},{},{center}", p.id, clustering.labels[i] + 1);
    }
    out
}

pub fn render_rates(table: &ExperimentTable) -> String {
    let mut out = String::from("seed,t,rate\n");
    for r in &table.rows {
        let _ = writeln!(out, "{},{},{}", r.seed, r.epoch, fmt_value(r.rate));
    }
    out
}

pub fn render_summary(table: &ExperimentTable) -> String {
    let mut out = String::from("t,mean_rate,std_rate\n");
    for s in table.summary() {
        let _ = writeln!(out, "{},{},{}", s.epoch, fmt_value(s.mean_rate), fmt_value(s.std_rate));
    }
    out
}
