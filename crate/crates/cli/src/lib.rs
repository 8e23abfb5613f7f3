//! Experiment front end for the `clearnet` toolkit.

pub mod commands;
pub mod config;
pub mod output;
pub mod presets;

use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, Parser, Subcommand};

use commands::NumericFailure;
use config::{Config, SweepVar};
use output::Sink;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "clearnet",
    version,
    about = "Clearing vectors on random interbank networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the limit equations and classify the regime.
    Limit,
    /// Solve the limit equations along a parameter grid.
    Sweep,
    /// Monte-Carlo estimates on sampled finite networks.
    Mc,
    /// Degree regularity of sampled graphs.
    GraphDiag,
    /// List the embedded presets.
    Presets,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON configuration with `model`, `finance` and `experiment` sections.
    #[arg(long, global = true, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// Embedded configuration by name.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Master seed, overriding the configuration
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for CSV/JSON output; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Monte-Carlo paths per network size
    #[arg(long, global = true)]
    pub paths: Option<usize>,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "CLEARNET_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Network sizes, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Sweep variable: yc, dc, kappa or w
    #[arg(long, global = true)]
    pub sweep: Option<SweepVar>,
    /// `start:stop:step`.
    #[arg(long, global = true)]
    pub grid: Option<String>,
}

fn load(common: &Common) -> anyhow::Result<Config> {
    let mut cfg = match (&common.config, &common.preset) {
        (Some(path), _) => Config::load(path)?,
        (None, Some(name)) => Config::preset(name)?,
        (None, None) => bail!("pass --config PATH or --preset NAME"),
    };
    if let Some(s) = common.seed {
        cfg.experiment.seed = s;
    }
    if let Some(p) = common.paths {
        cfg.experiment.paths = p;
    }
    if let Some(n) = &common.n {
        cfg.experiment.n = config::NValues::Many(n.clone());
    }
    Ok(cfg)
}

pub fn run(cli: &Cli) -> anyhow::Result<()> {
    if let Command::Presets = cli.command {
        let mut out = std::io::stdout().lock();
        for name in presets::NAMES {
            std::io::Write::write_fmt(&mut out, format_args!("{name}\n"))?;
        }
        return Ok(());
    }
    let cfg = load(&cli.common)?;
    let sink = Sink::new(cli.common.out.clone())?;
    match cli.command {
        Command::Limit => commands::limit(&cfg, &sink),
        Command::Sweep => {
            let spec = cfg.experiment.sweep.as_ref();
            let var = cli.common.sweep.or(spec.map(|s| s.var));
            let grid = cli.common.grid.clone().or(spec.map(|s| s.grid.clone()));
            let (Some(var), Some(grid)) = (var, grid) else {
                bail!("sweep needs --sweep VAR and --grid start:stop:step (or experiment.sweep)");
            };
            commands::sweep(&cfg, var, &grid, &sink)
        }
        Command::Mc => commands::mc(&cfg, cli.common.workers, &sink),
        Command::GraphDiag => commands::graph_diag(&cfg, &sink),
        Command::Presets => unreachable!(),
    }
}

/// 2 for bad input, 3 for numerical failure.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<NumericFailure>().is_some() {
            return EXIT_NUMERIC;
        }
        if let Some(e) = cause.downcast_ref::<clearnet::Error>() {
            return match e {
                clearnet::Error::InvalidParams(_)
                | clearnet::Error::NonIntegralGroups { .. }
                | clearnet::Error::DimensionMismatch { .. }
                | clearnet::Error::DenseTooLarge { .. } => EXIT_CONFIG,
                _ => EXIT_NUMERIC,
            };
        }
    }
    EXIT_CONFIG
}
