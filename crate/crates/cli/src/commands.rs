//! Command implementations behind the binary's subcommands, separated
//! from argument parsing so tests can drive them against in-memory
//! buffers.
//!
//! # Exit-code policy
//!
//! * 0 — success (for `verify`: every check passed)
//! * 1 — verification ran and at least one check failed
//! * 2 — usage, parse, or argument-domain error
//! * 3 — a state failed a physicality requirement
//!
//! [`CliError`] carries the 2/3 distinction; [`Outcome`] carries the 0/1
//! distinction. The mapping is exhaustive and disjoint.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use cvqfi_core::{
    maximize_qfi, mean_photon_number, qfi_general, scan_entanglement, total_photon_number,
    verify_suite, Error, Exactness, GeneratorWeights, OptimizeOptions, SqueezingVector,
};
use serde::Serialize;

use crate::format::scan_csv;
use crate::network::{build_state, load_network};

/// How a command's report is rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Line-oriented `key: value` text.
    Text,
    /// Pretty-printed JSON with stable key order.
    Json,
}

/// Successful command results that still differ in exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Exit 0.
    Success,
    /// Exit 1: the verification suite reported failing checks.
    ChecksFailed,
}

/// Command failures, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Exit 2: bad arguments, unreadable or unparseable input.
    Usage(String),
    /// Exit 3: a state violated a physicality requirement.
    State(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::State(m) => m,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::State(_) => 3,
        }
    }
}

/// Maps library errors onto the exit-code policy: argument/domain
/// problems are usage errors, state problems are physicality errors.
fn core_error(e: Error) -> CliError {
    match e {
        Error::InvalidArgument(_) | Error::OutOfDomain(_) => CliError::Usage(e.to_string()),
        Error::InvalidState(_) | Error::NumericalFailure(_) => CliError::State(e.to_string()),
    }
}

fn write_error(e: std::io::Error) -> CliError {
    CliError::Usage(format!("cannot write output: {e}"))
}

/// Report printed by `qfi`.
#[derive(Debug, Serialize)]
struct QfiReport {
    qfi: f64,
    exactness: Exactness,
    per_mode_photon_numbers: Vec<f64>,
    total_photons: f64,
    pure: bool,
}

fn exactness_label(e: Exactness) -> &'static str {
    match e {
        Exactness::ExactPure => "exact-pure",
        Exactness::UpperBoundMixed => "upper-bound-mixed",
    }
}

/// `qfi`: build the state a network file describes and report its QFI
/// under the given phase weights.
pub fn cmd_qfi(
    network: &Path,
    g: &[f64],
    output: OutputFormat,
    w: &mut impl Write,
) -> Result<Outcome, CliError> {
    let spec = load_network(network).map_err(CliError::Usage)?;
    if g.len() != spec.n_modes {
        return Err(CliError::Usage(format!(
            "--g needs {} weights for this network, got {}",
            spec.n_modes,
            g.len()
        )));
    }
    let v = build_state(&spec).map_err(core_error)?;
    let weights = GeneratorWeights::new(g.to_vec()).map_err(core_error)?;
    let result = qfi_general(&v, &weights).map_err(core_error)?;
    let per_mode: Vec<f64> = (0..spec.n_modes)
        .map(|a| mean_photon_number(&v, a))
        .collect::<cvqfi_core::Result<_>>()
        .map_err(core_error)?;
    let report = QfiReport {
        qfi: result.value,
        exactness: result.exactness,
        per_mode_photon_numbers: per_mode,
        total_photons: total_photon_number(&v),
        pure: v.validate().pure,
    };

    match output {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            writeln!(w, "{text}").map_err(write_error)?;
        }
        OutputFormat::Text => {
            writeln!(w, "qfi: {}", report.qfi).map_err(write_error)?;
            writeln!(w, "exactness: {}", exactness_label(report.exactness))
                .map_err(write_error)?;
            let photons: Vec<String> = report
                .per_mode_photon_numbers
                .iter()
                .map(|n| n.to_string())
                .collect();
            writeln!(w, "per_mode_photon_numbers: {}", photons.join(", "))
                .map_err(write_error)?;
            writeln!(w, "total_photons: {}", report.total_photons).map_err(write_error)?;
            writeln!(w, "pure: {}", report.pure).map_err(write_error)?;
        }
    }
    Ok(Outcome::Success)
}

/// `scan`: sweep the two-mode interferometer at squeezing `r` and write
/// the trade-off table as CSV.
pub fn cmd_scan(r: f64, points: usize, out: &Path) -> Result<Outcome, CliError> {
    let rows = scan_entanglement(r, points).map_err(core_error)?;
    std::fs::write(out, scan_csv(&rows))
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(Outcome::Success)
}

/// `optimize`: search mesh angles for the maximal QFI and report the gap
/// to the closed-form ceiling as JSON. A nonzero gap is still exit 0 —
/// the gap is data.
pub fn cmd_optimize(
    r: &[f64],
    g: &[f64],
    restarts: usize,
    seed: u64,
    w: &mut impl Write,
) -> Result<Outcome, CliError> {
    let r = SqueezingVector::new(r.to_vec()).map_err(core_error)?;
    let g = GeneratorWeights::new(g.to_vec()).map_err(core_error)?;
    let opts = OptimizeOptions {
        restarts,
        seed,
        ..OptimizeOptions::default()
    };
    let result = maximize_qfi(&r, &g, &opts).map_err(core_error)?;
    let text = serde_json::to_string_pretty(&result).expect("result serializes");
    writeln!(w, "{text}").map_err(write_error)?;
    Ok(Outcome::Success)
}

/// `verify`: run the randomized identity/bound suite and print its
/// report; the exit code says whether every check passed.
pub fn cmd_verify(
    seed: u64,
    trials: usize,
    max_modes: usize,
    w: &mut impl Write,
) -> Result<Outcome, CliError> {
    let report = verify_suite(seed, trials, max_modes).map_err(core_error)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(w, "{text}").map_err(write_error)?;
    Ok(if report.all_passed {
        Outcome::Success
    } else {
        Outcome::ChecksFailed
    })
}
