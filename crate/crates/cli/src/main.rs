//! `cvqfi` — Gaussian-state phase metrology from the command line.
//!
//! Subcommands: `qfi` (evaluate a network file), `scan` (trade-off CSV),
//! `optimize` (mesh search against the analytic ceiling), `verify`
//! (randomized identity suite). Exit codes: 0 success / all checks pass,
//! 1 verification failure, 2 usage or parse error, 3 unphysical state.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cvqfi::commands::{self, CliError, Outcome, OutputFormat};

#[derive(Parser)]
#[command(
    name = "cvqfi",
    version,
    about = "Quantum Fisher information and path entanglement of squeezed light in passive networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the QFI of the state a network file describes
    Qfi {
        /// Path to a network JSON file
        #[arg(long)]
        network: PathBuf,
        /// Phase weight per mode, comma-separated (e.g. `1,-1`)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        g: Vec<f64>,
        /// Report format
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Write the entanglement/QFI trade-off sweep as CSV
    Scan {
        /// Input squeezing on both modes (non-negative, radians-free)
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Number of grid points on [0, pi/2], at least 2
        #[arg(long)]
        points: usize,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Search mesh angles for the maximal QFI and report the gap to the
    /// closed-form optimum (JSON)
    Optimize {
        /// Input squeezing per mode, comma-separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        r: Vec<f64>,
        /// Phase weight per mode, comma-separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        g: Vec<f64>,
        /// Simplex restarts
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Seed for restart initialization
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the randomized identity/bound suite and print its JSON report
    Verify {
        /// Master seed; same seed, same report bytes
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per check
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Largest mode count sampled (2 to 8)
        #[arg(long, default_value_t = 4)]
        max_modes: usize,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Qfi { network, g, output } => {
            commands::cmd_qfi(&network, &g, output, &mut stdout)
        }
        Command::Scan { r, points, out } => commands::cmd_scan(r, points, &out),
        Command::Optimize {
            r,
            g,
            restarts,
            seed,
        } => commands::cmd_optimize(&r, &g, restarts, seed, &mut stdout),
        Command::Verify {
            seed,
            trials,
            max_modes,
        } => commands::cmd_verify(seed, trials, max_modes, &mut stdout),
    }
}

fn main() -> ExitCode {
    // Clap itself exits with code 2 on usage errors, matching the policy.
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
