//! IO, file formats, and command implementations behind the `grades`
//! binary. The algorithmic work lives in `grades-core`; this crate adds
//! the std-only surface: JSON/CSV persistence, clap wiring, and the
//! benchmark runner.

pub mod commands;
pub mod error;
pub mod formats;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "grades",
    version,
    about = "Sparse recovery by gradient descent with sparsification: \
             generate instances, certify isometry bounds, solve, benchmark"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance (Gaussian matrix, planted sparse signal).
    Gen(commands::GenArgs),
    /// Certify or estimate isometry bounds for an instance's matrix.
    Rip(commands::RipArgs),
    /// Run the solver on an instance.
    Solve(commands::SolveArgs),
    /// Sweep seeds: generate, certify, solve, and tabulate.
    Bench(commands::BenchArgs),
}

pub fn run(cli: &Cli) -> error::Result<()> {
    match &cli.command {
        Command::Gen(args) => commands::cmd_gen(args),
        Command::Rip(args) => commands::cmd_rip(args),
        Command::Solve(args) => commands::cmd_solve(args),
        Command::Bench(args) => commands::cmd_bench(args),
    }
}
