//! `edgeplan` — plan cache-enabled edge deployments from the command line.

mod commands;
mod config;
mod error;
mod fmt;
mod plot;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::ScenarioConfig;
use error::CliError;

#[derive(Parser)]
#[command(
    name = "edgeplan",
    version,
    about = "Delay-aware planning for cache-enabled edge deployments",
    long_about = "Evaluates the average user normalized delivery time (AUNDT) of a \
                  cache-enabled edge cluster, optimizes the deployment density, computes \
                  backhaul/cache compensations for forced densities, and validates the \
                  closed form against a Monte Carlo delivery simulation."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate AUNDT over a cluster-size sweep (one curve per beta/lambda).
    Analyze {
        /// Scenario config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path; defaults to the config's `out`, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the delay-optimal deployment density.
    Optimize {
        #[arg(long)]
        config: PathBuf,
    },
    /// Compute the minimal backhaul-rate / cache-ratio compensation for a
    /// sub-optimal density.
    Adjust {
        #[arg(long)]
        config: PathBuf,
        /// The deployable density M' (at most the optimal density).
        #[arg(long = "m-prime")]
        m_prime: u32,
    },
    /// Monte Carlo sweep comparing empirical and analytic AUNDT.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Fail (exit 3) when any row's gap exceeds its tolerance:
        /// 1e-9 for the fractional model, 4 standard errors for whole-file.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render an analyze/simulate CSV as an SVG chart.
    Plot {
        /// Input CSV produced by `analyze` or `simulate`.
        csv: PathBuf,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
}

/// `EDGEPLAN_THREADS` caps the simulator's rayon pool; results do not
/// depend on it.
fn configure_threads() {
    if let Ok(value) = std::env::var("EDGEPLAN_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { config, out } => {
            commands::analyze(&ScenarioConfig::load(&config)?, out)
        }
        Command::Optimize { config } => commands::optimize(&ScenarioConfig::load(&config)?),
        Command::Adjust { config, m_prime } => {
            commands::adjust(&ScenarioConfig::load(&config)?, m_prime)
        }
        Command::Simulate { config, check, out } => {
            commands::simulate(&ScenarioConfig::load(&config)?, check, out)
        }
        Command::Plot { csv, out } => plot::plot(&csv, &out),
    }
}

fn main() {
    configure_threads();
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
