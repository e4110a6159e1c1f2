//! `bohr` — command-line surface over the radius-bound library:
//! closed-form bound evaluation, sequence-space invariants, empirical
//! radius estimation, verification suites, and n-sweeps with CSV/JSON
//! output.
//!
//! Exit codes: 0 success, 2 parameter/usage validation, 3 numeric
//! failure, 10+ the number of failed verification checks plus 9
//! (capped at 125).

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bohr",
    version,
    about = "Bohr-radius bounds, space invariants and empirical estimates",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one closed-form bound formula and emit its report.
    Bounds(commands::bounds::BoundsArgs),
    /// Norms, Minkowski functionals, embedding constants and related
    /// space invariants.
    Norms(commands::norms::NormsArgs),
    /// Empirical upper estimation of a Bohr radius over a test family.
    Estimate(commands::estimate::EstimateArgs),
    /// Run a verification suite and report pass/fail per check.
    Verify(commands::verify::VerifyArgs),
    /// Evaluate a formula across a range of dimensions, emitting CSV.
    Sweep(commands::sweep::SweepArgs),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap uses exit 0 for --help/--version and 2 for usage errors
        Err(e) => e.exit(),
    };
    let code = match cli.command {
        Command::Bounds(args) => commands::bounds::run(&args),
        Command::Norms(args) => commands::norms::run(&args),
        Command::Estimate(args) => commands::estimate::run(&args),
        Command::Verify(args) => commands::verify::run(&args),
        Command::Sweep(args) => commands::sweep::run(&args),
    };
    std::process::exit(code);
}
