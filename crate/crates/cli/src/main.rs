//! Command line for the conelab conic duality engine.
//!
//! Exit codes: 0 on completion (a positive duality gap is a result, not an
//! error), 1 on input errors, 2 on internal inconsistencies (a sample that
//! contradicts a machine-checked characterization, which signals an
//! implementation bug).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use conelab::perturb::Problem;
use conelab_cli::report::{self, Format};
use conelab_cli::{commands, format};

#[derive(Parser)]
#[command(
    name = "conelab",
    version,
    about = "Exact conic linear programming duality lab"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Seed for every sampling-based check, so runs are replayable.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal values and witnesses of both problems.
    Solve { file: PathBuf },
    /// Duality report at a constraint perturbation (default: none).
    Gap {
        file: PathBuf,
        /// Perturbation z as comma-separated rationals.
        #[arg(long)]
        z: Option<String>,
    },
    /// Farkas alternative at a perturbation and level.
    Farkas {
        file: PathBuf,
        /// Constraint perturbation z (comma-separated rationals).
        #[arg(long)]
        z: Option<String>,
        /// Cost perturbation y (comma-separated; index:value pairs for the
        /// sequence family).
        #[arg(long)]
        y: Option<String>,
        /// The level of the alternative.
        #[arg(long)]
        alpha: String,
    },
    /// Fiberwise slice comparison over a perturbation.
    Slice {
        file: PathBuf,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Separating functional for a point outside the epigraph (n) or
    /// hypograph (m) set.
    Separate {
        file: PathBuf,
        /// The point, written base;height.
        #[arg(long)]
        point: String,
        /// Which set to separate from: n or m.
        #[arg(long, default_value = "n")]
        set: String,
    },
    /// Decide the identity H = N.
    CheckD { file: PathBuf },
    /// Decide the identity K = M.
    CheckDstar { file: PathBuf },
    /// Both algebraic-core conditions with witnesses.
    CoreConditions { file: PathBuf },
    /// Premises and conclusion of the dual-side core sufficiency.
    #[command(name = "verify-52")]
    Verify52 { file: PathBuf },
    /// Premises and conclusion of the primal-side core sufficiency.
    #[command(name = "verify-53")]
    Verify53 { file: PathBuf },
    /// Analytics of the parametric sequence-space family.
    Gale {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Also report the finite truncations up to this size.
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// Cross-check the two LP engines on the loaded instance.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 40)]
        rounds: usize,
    },
}

fn load_problem(path: &PathBuf) -> Result<Problem> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    format::parse_problem(&text).with_context(|| format!("in {}", path.display()))
}

fn run(cli: &Cli) -> Result<report::Report> {
    match &cli.command {
        Command::Solve { file } => commands::solve(&load_problem(file)?),
        Command::Gap { file, z } => commands::gap(&load_problem(file)?, z.as_deref()),
        Command::Farkas { file, z, y, alpha } => {
            commands::farkas_cmd(&load_problem(file)?, z.as_deref(), y.as_deref(), alpha)
        }
        Command::Slice { file, z, y } => {
            commands::slice(&load_problem(file)?, z.as_deref(), y.as_deref())
        }
        Command::Separate { file, point, set } => {
            commands::separate(&load_problem(file)?, point, set)
        }
        Command::CheckD { file } => commands::check_d(&load_problem(file)?, cli.seed),
        Command::CheckDstar { file } => commands::check_d_star(&load_problem(file)?, cli.seed),
        Command::CoreConditions { file } => commands::core_conditions(&load_problem(file)?),
        Command::Verify52 { file } => commands::verify_52(&load_problem(file)?, cli.seed),
        Command::Verify53 { file } => commands::verify_53(&load_problem(file)?, cli.seed),
        Command::Gale {
            alpha,
            beta,
            truncate,
        } => commands::gale_cmd(alpha, beta, *truncate, cli.seed),
        Command::Oracle { file, rounds } => {
            commands::oracle(&load_problem(file)?, cli.seed, *rounds)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let format = match cli.format {
                FormatArg::Human => Format::Human,
                FormatArg::Machine => Format::Machine,
            };
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {error:#}");
            let internal = error
                .chain()
                .any(|cause| matches!(cause.downcast_ref(), Some(conelab::Error::Internal(_))));
            if internal {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
