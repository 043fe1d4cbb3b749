//! `orbihall` — batch front end for the orbifold quantum Hall engine.
//!
//! One job per invocation: a JSON input file describing an orbifold,
//! bundle, transport setup or lattice experiment; a JSON (or CSV) report on
//! the output path or standard output. Exit status: 0 success, 1 input or
//! validation failure, 2 numerical failure, 3 hypothesis violation.
//! Failures are reported on standard error as `{"error": .., "detail": ..}`.

mod emit;
mod job;
mod schemas;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use job::{run, Command, JobOptions, JobSpec};

#[derive(Parser)]
#[command(
    name = "orbihall",
    version,
    about = "Exact quantum Hall invariants on 2D orbifolds, with a lattice validator"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Orbifold Euler characteristic, canonical degree and cover topology
    Info(CommonArgs),
    /// Degrees and holomorphic Euler characteristic of an orbifold bundle
    RiemannRoch(CommonArgs),
    /// Landau-level ladder and spectral-bundle invariants
    Spectrum(CommonArgs),
    /// Mean conductance table from homological pairing data
    Transport(CommonArgs),
    /// Lattice validation of the pillowcase spectral predictions
    Validate(CommonArgs),
    /// Exact elliptic pullback collapse across torsion translates
    PullbackDemo(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input JSON file
    #[arg(long)]
    input: PathBuf,
    /// Output file (standard output when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Sign convention, `theorem` or `proof` (transport only)
    #[arg(long)]
    convention: Option<String>,
    /// Ladder cap on flat covers (spectrum only)
    #[arg(long)]
    cap: Option<u32>,
    /// Reserved; all computations are deterministic and ignore it
    #[arg(long)]
    seed: Option<u64>,
}

impl CliCommand {
    fn into_job(self) -> JobSpec {
        let (command, args) = match self {
            CliCommand::Info(a) => (Command::Info, a),
            CliCommand::RiemannRoch(a) => (Command::RiemannRoch, a),
            CliCommand::Spectrum(a) => (Command::Spectrum, a),
            CliCommand::Transport(a) => (Command::Transport, a),
            CliCommand::Validate(a) => (Command::Validate, a),
            CliCommand::PullbackDemo(a) => (Command::PullbackDemo, a),
        };
        JobSpec {
            command,
            input_path: args.input,
            output_path: args.output,
            options: JobOptions {
                convention: args.convention,
                cap: args.cap,
                seed: args.seed,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = cli.command.into_job();
    match run(&job) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            #[derive(serde::Serialize)]
            struct Diagnostic<'a> {
                error: &'a str,
                detail: &'a str,
            }
            let diag = Diagnostic {
                error: e.code,
                detail: &e.detail,
            };
            eprintln!(
                "{}",
                serde_json::to_string(&diag).expect("diagnostics serialise")
            );
            ExitCode::from(e.exit as u8)
        }
    }
}
