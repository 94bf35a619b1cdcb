use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use smmala::targets::{simulate_garch, GarchParams};
use smmala_cli::data::{ingest, write_returns};
use smmala_cli::{run_experiment, CliError, ExperimentConfig, Overrides};

#[derive(Parser)]
#[command(name = "smmala", version, about = "Adaptive step size sMMALA experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config file.
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long = "eps-bar")]
        eps_bar: Option<f64>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a returns or regression CSV file.
    IngestCheck { path: PathBuf },
    /// Write a synthetic GARCH(1,1)-t return series.
    SimulateGarch {
        /// `a0,a1,b,nu` on the natural scale.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<f64>,
        #[arg(long = "T")]
        len: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, seed, iters, gamma, eps_bar, out } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            cfg.apply(&Overrides { seed, iters, gamma, eps_bar, out });
            let (outcome, files) = run_experiment(&cfg)?;
            if let Some(a) = outcome.summary.acceptance_rate {
                println!("acceptance rate {a:.4}");
            }
            for (k, v) in &outcome.summary.metrics {
                println!("{k} {v}");
            }
            for f in files {
                println!("wrote {}", f.display());
            }
        }
        Command::IngestCheck { path } => {
            println!("{}", ingest(&path)?.describe());
        }
        Command::SimulateGarch { params, len, seed, out } => {
            if params.len() != 4 {
                return Err(CliError::Config(format!("--params needs 4 values, found {}", params.len())));
            }
            let p = GarchParams { alpha0: params[0], alpha1: params[1], beta: params[2], nu: params[3] };
            let series = simulate_garch(&p, len, seed).map_err(|e| CliError::Config(e.to_string()))?;
            write_returns(&out, &series)?;
            println!("wrote {} returns to {}", series.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
