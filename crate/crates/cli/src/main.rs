use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dkcert::{cmd_analyze, cmd_fewbody, cmd_sharpness, cmd_sweep, GlobalOptions, EXIT_INPUT};

/// Certify a priori bounds on spectral-subspace rotation.
///
/// Exit status: 0 certified, 2 a bound or enclosure was violated, 1 bad input.
#[derive(Parser, Debug)]
#[command(name = "dkcert", version)]
struct Cli {
    /// Overrides the seed of the run configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Hermiticity tolerance (relative to 1 + max |entry|).
    #[arg(long, global = true)]
    tol_herm: Option<f64>,
    /// Slack allowed below zero on bound margins; a negative value demands
    /// a strictly positive margin.
    #[arg(long, global = true)]
    tol_margin: Option<f64>,
    /// Primary output file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run trials and restarts on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Suppress the summary on standard output.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one instance given A, V as matrix files.
    Analyze {
        a: PathBuf,
        v: PathBuf,
        /// Index list "0,1,2" or energy window "lo:hi".
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Ensemble sweep over an x grid; writes a CSV table.
    Sweep { config: PathBuf },
    /// Multi-start search for near-extremal instances.
    Sharpness { config: PathBuf },
    /// One-dimensional few-body model analysis.
    Fewbody { config: PathBuf },
}

fn main() -> ExitCode {
    // clap's own usage-error status is 2, which is reserved for violations.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let opts = GlobalOptions {
        seed: cli.seed,
        tol_herm: cli.tol_herm,
        tol_margin: cli.tol_margin,
        out: cli.out,
        sequential: cli.sequential,
        quiet: cli.quiet,
    };
    let result = match &cli.command {
        Command::Analyze { a, v, sigma } => cmd_analyze(a, v, sigma, &opts),
        Command::Sweep { config } => cmd_sweep(config, &opts),
        Command::Sharpness { config } => cmd_sharpness(config, &opts),
        Command::Fewbody { config } => cmd_fewbody(config, &opts),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
