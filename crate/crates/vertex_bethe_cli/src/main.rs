mod bethe;
mod config;
mod error;
mod grid;
mod output;
mod tabulate;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::bethe::{InitStrategy, SolveArgs};
use crate::config::{FileConfig, Format, Overrides, RunConfig};
use crate::error::CliError;
use crate::grid::Grid;
use crate::tabulate::Quantity;
use crate::verify::Suite;

/// Numerical checks and tables for the higher-spin eight-vertex model.
#[derive(Debug, Parser)]
#[command(name = "vertex-bethe", version)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML file with run settings; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Spin ℓ, a positive half-integer.
    #[arg(long, global = true)]
    ell: Option<f64>,

    /// Modulus parameter, τ = i/t.
    #[arg(long, global = true)]
    t: Option<f64>,

    /// Denominator of η = r′/r; must be even.
    #[arg(long, global = true)]
    r: Option<u32>,

    /// Numerator of η = r′/r; must be odd.
    #[arg(long = "r-prime", global = true)]
    r_prime: Option<u32>,

    #[arg(long = "n-sites", global = true)]
    n_sites: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run invariant suites and report each check against its threshold.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Solve the Bethe equations and report roots, residuals and parities.
    BetheSolve {
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        nu: i64,

        #[arg(long, value_enum, default_value = "string")]
        init: InitStrategy,

        /// Starting roots for `--init explicit`, as `re,im;re,im;…`.
        #[arg(long, allow_hyphen_values = true)]
        roots: Option<String>,

        /// Branch numbers of the logarithmic equations, comma separated.
        #[arg(long = "branch-ints", value_delimiter = ',', allow_negative_numbers = true)]
        branch_ints: Option<Vec<i64>>,

        #[arg(long = "max-iter", default_value_t = 200)]
        max_iter: usize,

        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Tabulate a thermodynamic quantity on a grid.
    Tabulate {
        #[arg(value_enum)]
        quantity: Quantity,

        /// `lo:hi:n`, endpoints included.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("VERTEX_BETHE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("VERTEX_BETHE_THREADS = {raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let c = &cli.common;
    let file = c.config.as_deref().map(FileConfig::load).transpose()?;
    let flags = Overrides {
        ell: c.ell,
        t: c.t,
        r: c.r,
        r_prime: c.r_prime,
        n_sites: c.n_sites,
        seed: c.seed,
        format: c.format,
        out: c.out.clone(),
    };
    let cfg = RunConfig::resolve(file, &flags)?;
    match cli.command {
        Command::Verify { suite } => verify::run(&cfg, suite),
        Command::BetheSolve { nu, init, roots, branch_ints, max_iter, tol } => {
            bethe::run(&cfg, &SolveArgs { nu, init, roots, branch_ints, max_iter, tol })
        }
        Command::Tabulate { quantity, grid } => tabulate::run(&cfg, quantity, grid),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vertex-bethe: {e}");
            if let CliError::NonConvergence { trace, .. } = &e {
                eprintln!("newton trace: {trace:?}");
            }
            e.exit_code()
        }
    }
}
