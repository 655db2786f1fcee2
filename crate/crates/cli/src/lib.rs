//! Command-line front end for `mittag-core`: matrix Mittag-Leffler
//! evaluation, fractional system solves, the Bagley–Torvik equation and the
//! closed-form verification run.

mod commands;
pub mod error;
pub mod formats;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{exit, CliError};

/// Environment variable capping the worker threads used internally.
pub const THREADS_ENV: &str = "MITTAG_NUM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "mittag",
    version,
    about = "Matrix Mittag-Leffler functions and linear fractional systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate E_{α,β}(A) for a matrix read from a file.
    Eval(EvalArgs),
    /// Solve D^α z = A z + f(t) on a uniform grid.
    Solve(SolveArgs),
    /// Solve a y'' + b D^{3/2} y + c y = f(t).
    BagleyTorvik(BagleyTorvikArgs),
    /// Compare E_{1/2,1}(B) and E_{1/2,1/2}(B) with their closed forms.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Matrix file (JSON with rows, cols, data).
    #[arg(long)]
    pub matrix: String,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Three-parameter index; only for 1x1 matrices.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    /// Target accuracy of the scalar evaluations.
    #[arg(long, default_value_t = 1e-13)]
    pub accuracy: f64,
    /// Output matrix file; standard output when absent.
    #[arg(long)]
    pub out: Option<String>,
    /// Reference matrix file; the report then includes the largest deviation.
    #[arg(long)]
    pub reference: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Rl,
    Caputo,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub matrix: String,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Initial vector: a file path or an inline list such as "1,0,-2".
    #[arg(long, allow_hyphen_values = true)]
    pub z0: String,
    #[arg(long = "t-end", allow_negative_numbers = true)]
    pub t_end: f64,
    #[arg(long)]
    pub steps: usize,
    /// Sampled forcing table with columns t, f₁ … f_n.
    #[arg(long)]
    pub forcing: Option<String>,
    #[arg(long, default_value_t = 1e-13)]
    pub accuracy: f64,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct BagleyTorvikArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub y0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub yp0: f64,
    #[arg(long = "t-end", allow_negative_numbers = true)]
    pub t_end: f64,
    #[arg(long)]
    pub steps: usize,
    /// Sampled forcing table with columns t, f.
    #[arg(long)]
    pub forcing: Option<String>,
    /// Output the whole state (y, D^{1/2}y, y', D^{3/2}y) instead of y.
    #[arg(long = "full-state")]
    pub full_state: bool,
    #[arg(long, default_value_t = 1e-13)]
    pub accuracy: f64,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest accepted absolute deviation per entry.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    /// Last diagonal entry of the companion matrix (−b/a with c = 0).
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub p: f64,
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got \"{v}\""
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result =
        thread_pool().and_then(|pool| pool.install(|| commands::dispatch(&cli.command, out, err)));
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
