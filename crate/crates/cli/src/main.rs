use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use covclust::eval::ExperimentConfig;
use covclust_cli::commands::{
    cmd_cluster, cmd_experiment, cmd_ingest_check, cmd_simulate, parse_case, parse_mode, parse_window, rates_path,
    summary_path, ClusterOpts, ExperimentOpts, SimulateOpts,
};
use covclust_cli::config::{parse_hurst, parse_list};
use covclust_cli::{CliError, Result, RunConfig};

/// Covariance-based clustering of sampled stochastic processes.
#[derive(Debug, Parser)]
#[command(name = "covclust", version)]
struct Cli {
    /// Flat JSON config; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Default output directory (also read from COVCLUST_OUT_DIR).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate multifractional Brownian motion paths into a series file.
    Simulate {
        /// const:H, mono:h:Q or sin:h:Q
        #[arg(long)]
        hurst: Option<String>,
        /// Observations per path.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        paths: Option<usize>,
        /// Sampling mesh.
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cluster the series in a file.
    Cluster {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// offline or online
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        kappa: Option<usize>,
        /// Apply the signed logarithm to covariance entries.
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        log_star: Option<bool>,
        /// Window length K, or `auto` for n - 2.
        #[arg(long = "K")]
        window: Option<String>,
        /// Number L of averaged windows.
        #[arg(long = "L")]
        windows: Option<usize>,
    },
    /// Replicate the misclassification-rate experiments.
    Experiment {
        /// mono, sin or const
        #[arg(long)]
        case: Option<String>,
        /// offline or online
        #[arg(long)]
        mode: Option<String>,
        /// e.g. `0..10` or `1,4,9`
        #[arg(long)]
        seeds: Option<String>,
        /// e.g. `5,20,50,100` or `1..=100`
        #[arg(long)]
        epochs: Option<String>,
        #[arg(long)]
        paths_per_group: Option<usize>,
        /// Start from the full-size protocol instead of the reduced one.
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        full_scale: Option<bool>,
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        log_star: Option<bool>,
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        parallel: Option<bool>,
    },
    /// Validate a series file without clustering it.
    IngestCheck {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        mode: Option<String>,
    },
}

fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Config(format!("missing required setting `{name}`")))
}

fn run(cli: Cli) -> Result<String> {
    let rc = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let out_dir = rc.resolve_out_dir(cli.out_dir.clone());
    match cli.command {
        Command::Simulate {
            hurst,
            n,
            paths,
            dt,
            seed,
            out,
        } => {
            let n = n.or(rc.n).unwrap_or(100);
            let opts = SimulateOpts {
                hurst: parse_hurst(&hurst.or(rc.hurst).unwrap_or_else(|| "const:0.5".into()))?,
                n,
                paths: paths.or(rc.paths).unwrap_or(1),
                dt: dt.or(rc.dt).unwrap_or(1.0 / n as f64),
                seed: seed.or(rc.seed).unwrap_or(0),
                output: out.or(rc.output).unwrap_or_else(|| out_dir.join("series.csv")),
            };
            let paths = cmd_simulate(&opts)?;
            Ok(format!("wrote {} paths to {}", paths.len(), opts.output.display()))
        }
        Command::Cluster {
            input,
            out,
            mode,
            kappa,
            log_star,
            window,
            windows,
        } => {
            let opts = ClusterOpts {
                input: require(input.or(rc.input), "input")?,
                output: out.or(rc.output).unwrap_or_else(|| out_dir.join("assignments.csv")),
                mode: parse_mode(&mode.or(rc.mode).unwrap_or_else(|| "offline".into()))?,
                kappa: require(kappa.or(rc.kappa), "kappa")?,
                log_star: log_star.or(rc.log_star).unwrap_or(false),
                window: parse_window(&window.or(rc.window).unwrap_or_else(|| "auto".into()))?,
                windows: windows.or(rc.windows).unwrap_or(1),
            };
            let c = cmd_cluster(&opts)?;
            Ok(format!("wrote {} assignments to {}", c.len(), opts.output.display()))
        }
        Command::Experiment {
            case,
            mode,
            seeds,
            epochs,
            paths_per_group,
            full_scale,
            log_star,
            parallel,
        } => {
            let case = parse_case(&case.or(rc.case).unwrap_or_else(|| "mono".into()))?;
            let mode = parse_mode(&mode.or(rc.mode).unwrap_or_else(|| "offline".into()))?;
            let mut ec = if full_scale.or(rc.full_scale).unwrap_or(false) {
                ExperimentConfig::full_scale(case, mode)
            } else {
                ExperimentConfig::desk(case, mode)
            };
            if let Some(s) = seeds.or(rc.seeds) {
                ec.seeds = parse_list(&s)?;
            } else if let Some(seed) = rc.seed {
                ec.seeds = vec![seed];
            }
            if let Some(e) = epochs.or(rc.epochs) {
                ec.epochs = parse_list(&e)?.into_iter().map(|t| t as usize).collect();
            }
            if let Some(p) = paths_per_group.or(rc.paths_per_group) {
                ec.paths_per_group = p;
            }
            if let Some(on) = log_star.or(rc.log_star) {
                ec.dissim = ec.dissim.with_log_star(on);
            }
            if let Some(on) = parallel.or(rc.parallel) {
                ec.parallel = on;
            }
            let opts = ExperimentOpts { config: ec, out_dir };
            let table = cmd_experiment(&opts)?;
            Ok(format!(
                "wrote {} rows to {} and {}",
                table.rows.len(),
                rates_path(&opts.out_dir).display(),
                summary_path(&opts.out_dir).display()
            ))
        }
        Command::IngestCheck { input, mode } => {
            let input = require(input.or(rc.input), "input")?;
            let mode = parse_mode(&mode.or(rc.mode).unwrap_or_else(|| "online".into()))?;
            cmd_ingest_check(&input, mode)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(msg) => {
            println!("{msg}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error:{}: {msg}", e.category());
            ExitCode::FAILURE
        }
    }
}

