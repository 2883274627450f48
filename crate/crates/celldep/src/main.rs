use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use celldep::cli::report::Report;
use celldep::cli::{commands, CliError, OutputFormat, RunConfig};

/// Inter-cell dependency probabilities for a 3-channel hexagonal 802.11
/// deployment: closed forms, quadrature and Monte Carlo oracles, and
/// comparison reports.
#[derive(Parser, Debug)]
#[command(name = "celldep", version)]
struct Args {
    /// JSON run configuration; defaults to the built-in reference setup.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output format (overrides the config).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Monte Carlo seed (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo sample count (overrides the config).
    #[arg(long, global = true)]
    samples: Option<u64>,

    /// Monte Carlo worker count (overrides the config).
    #[arg(long, global = true)]
    workers: Option<u32>,

    /// Quadrature grid size (overrides the config).
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<u32>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Interference reach gamma per configured rate.
    Gamma,
    /// Co-channel tiers with center distance below a bound.
    Tiers {
        /// Distance bound in cell-radius units.
        #[arg(long = "nu-max")]
        nu_max: f64,
    },
    /// Closed-form per-tier probabilities and aggregate for one rate.
    ClosedForm {
        #[arg(long)]
        rate: f64,
    },
    /// Quadrature of the Type I integral for one rate and tier.
    Quadrature {
        #[arg(long)]
        rate: f64,
        /// 1-based tier index.
        #[arg(long)]
        tier: usize,
    },
    /// Monte Carlo aggregate estimates for one rate.
    Simulate {
        #[arg(long)]
        rate: f64,
    },
    /// Full comparison table with the discrepancy report.
    Table,
}

fn load_config(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.mc.seed = seed;
    }
    if let Some(samples) = args.samples {
        cfg.mc.samples = samples;
    }
    if let Some(workers) = args.workers {
        cfg.mc.workers = workers;
    }
    if let Some(grid_n) = args.grid_n {
        cfg.grid_n = grid_n;
    }
    if let Some(format) = args.format {
        cfg.format = format;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(args: &Args) -> Result<String, CliError> {
    let cfg = load_config(args)?;
    let rendered = match &args.command {
        Command::Gamma => commands::cmd_gamma(&cfg)?.render(cfg.format),
        Command::Tiers { nu_max } => commands::cmd_tiers(*nu_max)?.render(cfg.format),
        Command::ClosedForm { rate } => commands::cmd_closed_form(&cfg, *rate)?.render(cfg.format),
        Command::Quadrature { rate, tier } => {
            commands::cmd_quadrature(&cfg, *rate, *tier)?.render(cfg.format)
        }
        Command::Simulate { rate } => commands::cmd_simulate(&cfg, *rate)?.render(cfg.format),
        Command::Table => commands::cmd_table(&cfg)?.render(cfg.format),
    };
    Ok(rendered)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(rendered) => {
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(5);
                }
            } else {
                print!("{rendered}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
