//! `numrange`: sample and certify numerical ranges, Kippenhahn curves and
//! convex supports of Hermitian tuples.
//!
//! Exit status: 0 when every pass flag in the report is true, 1 when a
//! certification failed, 2 on usage, input or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use numrange_cli::commands;
use numrange_cli::report::RunReport;

#[derive(Parser)]
#[command(name = "numrange", version, about = "Numerical-range and convex-support toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample support lines of the numerical range of a pair (k = 2) and
    /// write touch points, their hull and a plot.
    Boundary {
        /// Tuple file in JSON object notation.
        input: PathBuf,
        /// Number of support angles, evenly spaced on the circle.
        #[arg(long, default_value_t = 720)]
        grid: usize,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Sample the Kippenhahn curve of a pair and certify that its convex
    /// hull reproduces the numerical range.
    Kippenhahn {
        /// Tuple file in JSON object notation.
        input: PathBuf,
        /// Number of support angles, evenly spaced on the circle.
        #[arg(long, default_value_t = 720)]
        grid: usize,
        /// Relative Hausdorff tolerance for the certification.
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Sample boundary-generating surface points of the convex support over
    /// a direction grid and check tangency and variety residuals.
    Surface {
        /// Tuple file in JSON object notation.
        input: PathBuf,
        /// Number of directions in the sweep.
        #[arg(long, default_value_t = 2000)]
        directions: usize,
        /// Seed for the randomized part of the direction grid.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check spectrahedron/convex-support duality: seeded weak-duality
    /// trials plus a margin-agreement sweep.
    Duality {
        /// Tuple file in JSON object notation.
        input: PathBuf,
        /// Number of seeded trials.
        #[arg(long, default_value_t = 10000)]
        trials: usize,
        /// Seed for the trial generator.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> anyhow::Result<(RunReport, PathBuf)> {
    match cli.command {
        Command::Boundary { input, grid, out } => {
            Ok((commands::boundary(&input, grid, &out)?, out))
        }
        Command::Kippenhahn { input, grid, tol, out } => {
            Ok((commands::kippenhahn(&input, grid, tol, &out)?, out))
        }
        Command::Surface { input, directions, seed, out } => {
            Ok((commands::surface(&input, directions, seed, &out)?, out))
        }
        Command::Duality { input, trials, seed, out } => {
            Ok((commands::duality(&input, trials, seed, &out)?, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, out)) => match report.write_rendered(&out) {
            Ok(text) => {
                print!("{text}");
                if report.all_pass() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(err) => {
                eprintln!("error: {err:#}");
                ExitCode::from(2)
            }
        },
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
