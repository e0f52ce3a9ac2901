//! Flat JSON run configuration. Every key is optional; command-line flags
//! win over the file, and the file wins over built-in defaults.

use std::path::{Path, PathBuf};

use covclust::HurstFunction;
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "COVCLUST_OUT_DIR";

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub input: Option<PathBuf>,

    // simulate
    pub hurst: Option<String>,
    pub n: Option<usize>,
    pub paths: Option<usize>,
    pub dt: Option<f64>,

    // cluster
    pub mode: Option<String>,
    pub kappa: Option<usize>,
    pub log_star: Option<bool>,
    /// `"auto"` or a window length.
    pub window: Option<String>,
    pub windows: Option<usize>,

    // experiment
    pub case: Option<String>,
    pub seeds: Option<String>,
    pub epochs: Option<String>,
    pub paths_per_group: Option<usize>,
    pub full_scale: Option<bool>,
    pub parallel: Option<bool>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: e.line() as u64,
            message: e.to_string(),
        })
    }

    /// Output directory: config, then the environment, then the working directory.
    pub fn resolve_out_dir(&self, flag: Option<PathBuf>) -> PathBuf {
        flag.or_else(|| self.out_dir.clone())
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }
}

/// `const:H`, `mono:h:Q` or `sin:h:Q`.
pub fn parse_hurst(text: &str) -> Result<HurstFunction<f64>> {
    let bad = || CliError::Config(format!("bad Hurst function `{text}`; expected const:H, mono:h:Q or sin:h:Q"));
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    match parts.as_slice() {
        ["const", h] => Ok(HurstFunction::Constant(num(h)?)),
        ["mono", h, q] => Ok(HurstFunction::monotonic(num(h)?, num(q)?)),
        ["sin", h, q] => Ok(HurstFunction::periodic(num(h)?, num(q)?)),
        _ => Err(bad()),
    }
}

/// Integer lists as ranges (`a..b` half-open, `a..=b` inclusive) or comma-separated values.
/// An empty string is an empty list.
pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    let bad = || CliError::Config(format!("bad list `{text}`"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = text.split_once("..=") {
        return Ok((num(a)?..=num(b)?).collect());
    }
    if let Some((a, b)) = text.split_once("..") {
        return Ok((num(a)?..num(b)?).collect());
    }
    text.split(',').map(num).collect()
}
