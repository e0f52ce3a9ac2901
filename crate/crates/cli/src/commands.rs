//! Subcommand bodies, callable without going through argument parsing.

use std::path::{Path, PathBuf};

use covclust::eval::{run_experiment, ClusterMode, ExperimentConfig, ExperimentTable, HurstCase};
use covclust::{
    dissimilarity_matrix, mbm_sampler, offline_cluster, online_cluster, Clustering, DissimConfig, HurstFunction,
    OnlineSnapshot, SamplePath, Window,
};

use crate::error::{CliError, Result};
use crate::series::{ingest_series, render_assignments, render_rates, render_series, render_summary, IngestMode};

/// Ingested series are treated as unit-spaced samples.
pub const INGEST_DELTA_T: f64 = 1.0;

#[derive(Debug, Clone)]
pub struct SimulateOpts {
    pub hurst: HurstFunction<f64>,
    pub n: usize,
    pub paths: usize,
    pub dt: f64,
    pub seed: u64,
    pub output: PathBuf,
}

#[derive(Debug, Clone)]
pub struct ClusterOpts {
    pub input: PathBuf,
    pub output: PathBuf,
    pub mode: ClusterMode,
    pub kappa: usize,
    pub log_star: bool,
    pub window: Window,
    pub windows: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentOpts {
    pub config: ExperimentConfig,
    pub out_dir: PathBuf,
}

pub fn parse_mode(s: &str) -> Result<ClusterMode> {
    match s {
        "offline" => Ok(ClusterMode::Offline),
        "online" => Ok(ClusterMode::Online),
        _ => Err(CliError::Config(format!("unknown mode `{s}`; expected offline or online"))),
    }
}

pub fn parse_case(s: &str) -> Result<HurstCase> {
    match s {
        "mono" => Ok(HurstCase::Monotonic),
        "sin" => Ok(HurstCase::Periodic),
        "const" => Ok(HurstCase::Constant),
        _ => Err(CliError::Config(format!("unknown case `{s}`; expected mono, sin or const"))),
    }
}

pub fn parse_window(s: &str) -> Result<Window> {
    if s == "auto" {
        return Ok(Window::Auto);
    }
    s.parse()
        .map(Window::Fixed)
        .map_err(|_| CliError::Config(format!("bad window `{s}`; expected auto or an integer")))
}

fn ingest_mode(mode: ClusterMode) -> IngestMode {
    match mode {
        ClusterMode::Offline => IngestMode::Offline,
        ClusterMode::Online => IngestMode::Online,
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Paths `path-0 … path-{paths-1}` on the grid dt, 2dt, …, n·dt; path p
/// uses random stream p of `seed`.
pub fn simulate_paths(opts: &SimulateOpts) -> Result<Vec<SamplePath<f64>>> {
    if opts.paths == 0 {
        return Err(CliError::Config("at least one path is required".into()));
    }
    let sampler = mbm_sampler(&opts.hurst, opts.n, opts.dt)?;
    (0..opts.paths)
        .map(|p| {
            let values = sampler.sample(opts.seed, p as u64);
            Ok(SamplePath::new(format!("path-{p}"), values, opts.dt, opts.dt)?)
        })
        .collect()
}

pub fn cmd_simulate(opts: &SimulateOpts) -> Result<Vec<SamplePath<f64>>> {
    let paths = simulate_paths(opts)?;
    write(&opts.output, &render_series(&paths))?;
    Ok(paths)
}

pub fn cluster_paths(paths: &[SamplePath<f64>], opts: &ClusterOpts) -> Result<Clustering> {
    let cfg = DissimConfig::default()
        .with_log_star(opts.log_star)
        .with_window(opts.window, opts.windows);
    let clustering = match opts.mode {
        ClusterMode::Offline => offline_cluster(&dissimilarity_matrix(paths, &cfg)?, opts.kappa)?,
        ClusterMode::Online => {
            let snapshot = OnlineSnapshot {
                epoch: 0,
                paths: paths.to_vec(),
            };
            online_cluster(&snapshot, opts.kappa, &covclust::WeightRule::InversePairSquare, &cfg)?
        }
    };
    Ok(clustering)
}

pub fn cmd_cluster(opts: &ClusterOpts) -> Result<Clustering> {
    let paths = ingest_series(&opts.input, ingest_mode(opts.mode), INGEST_DELTA_T)?;
    let clustering = cluster_paths(&paths, opts)?;
    write(&opts.output, &render_assignments(&paths, &clustering))?;
    Ok(clustering)
}

pub fn rates_path(out_dir: &Path) -> PathBuf {
    out_dir.join("rates.csv")
}

pub fn summary_path(out_dir: &Path) -> PathBuf {
    out_dir.join("summary.csv")
}

/// Runs the experiment and writes `rates.csv` and `summary.csv`. Nothing is
/// written unless the whole run succeeds.
pub fn cmd_experiment(opts: &ExperimentOpts) -> Result<ExperimentTable> {
    opts.config.validate()?;
    let table = run_experiment(&opts.config)?;
    write(&rates_path(&opts.out_dir), &render_rates(&table))?;
    write(&summary_path(&opts.out_dir), &render_summary(&table))?;
    Ok(table)
}

/// One-line description of a series file that parsed cleanly.
pub fn cmd_ingest_check(input: &Path, mode: ClusterMode) -> Result<String> {
    let paths = ingest_series(input, ingest_mode(mode), INGEST_DELTA_T)?;
    let min = paths.iter().map(SamplePath::len).min().unwrap_or(0);
    let max = paths.iter().map(SamplePath::len).max().unwrap_or(0);
    Ok(format!("ok: {} series, lengths {min}..={max}", paths.len()))
}
