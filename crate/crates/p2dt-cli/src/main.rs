mod cache;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use p2dt::invariants::invariant_report;

use crate::cache::RowsError;

const DEFAULT_B: [i64; 8] = [0, -2, -4, -6, -8, -1, -3, -5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(
    name = "p2dt",
    version,
    about = "Rank-2 DT and BPS invariants of local P2 by torus localization"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    format: Format,

    /// Directory for cached enumerations.
    #[arg(long, env = "P2DT_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants for each Hilbert polynomial m^2+3m+2+b.
    Dt {
        /// Values of b (≤ 0), e.g. `--b -2 -4` or `--b=-2,-4`; defaults to 0,-2,-4,-6,-8,-1,-3,-5.
        #[arg(long = "b", allow_negative_numbers = true, value_delimiter = ',', num_args = 1..)]
        b: Vec<i64>,
        /// Level n for the pair invariants (default: automatic).
        #[arg(long)]
        n: Option<i64>,
        /// Hard floor for the A sweep.
        #[arg(long = "a-floor", allow_negative_numbers = true)]
        a_floor: Option<i64>,
    },
    /// Canonical rows of D(P) for one b.
    Table {
        #[arg(long = "b", allow_negative_numbers = true, required = true)]
        b: i64,
        #[arg(long = "a-floor", allow_negative_numbers = true)]
        a_floor: Option<i64>,
    },
    /// Generating series coefficients.
    Series {
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Run the identity and consistency checks.
    Verify {
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Only the per-chart counts of the toric example.
        #[arg(long)]
        ex_toric: bool,
        /// Values of b for the n-independence and formula agreement checks.
        #[arg(long = "b", allow_negative_numbers = true, value_delimiter = ',', num_args = 1.., default_values_t = [0, -2, -4, -6, -1, -3])]
        b: Vec<i64>,
        #[arg(long = "a-floor", allow_negative_numbers = true)]
        a_floor: Option<i64>,
    },
    /// Manage the enumeration cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// List cached values of b.
    List,
    /// Delete all cache files.
    Clear,
    /// Enumerate and store D(P) for the given b.
    Warm {
        #[arg(long = "b", allow_negative_numbers = true, value_delimiter = ',', num_args = 1..)]
        b: Vec<i64>,
        #[arg(long = "a-floor", allow_negative_numbers = true)]
        a_floor: Option<i64>,
    },
}

pub enum Failure {
    Check(String),
    Config(String),
}

impl From<RowsError> for Failure {
    fn from(e: RowsError) -> Self {
        match e {
            RowsError::Compute(e) => Failure::Check(e.to_string()),
            RowsError::Io(e) => Failure::Config(format!("cache: {e}")),
        }
    }
}

fn check_b(bs: &[i64]) -> Result<(), Failure> {
    match bs.iter().find(|&&b| b > 0) {
        Some(b) => Err(Failure::Config(format!("b must be ≤ 0, got {b}"))),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let cache_dir = cli.cache_dir.as_deref();
    match cli.command {
        Command::Dt { b, n, a_floor } => {
            let bs = if b.is_empty() { DEFAULT_B.to_vec() } else { b };
            check_b(&bs)?;
            let mut reports = Vec::new();
            for &b in &bs {
                let rows = cache::rows_for(b, a_floor, cache_dir)?;
                let r = invariant_report(b, &rows, n).map_err(|e| Failure::Check(e.to_string()))?;
                reports.push(r);
            }
            print!("{}", render::reports(&reports, cli.format));
            Ok(reports.iter().all(|r| r.checks.all()))
        }
        Command::Table { b, a_floor } => {
            check_b(&[b])?;
            let rows = cache::rows_for(b, a_floor, cache_dir)?;
            print!("{}", render::table(b, &rows, cli.format));
            Ok(true)
        }
        Command::Series { order } => {
            let s = render::series(order, cli.format).map_err(|e| Failure::Check(e.to_string()))?;
            print!("{s}");
            Ok(true)
        }
        Command::Verify {
            order,
            ex_toric,
            b,
            a_floor,
        } => {
            check_b(&b)?;
            let checks = if ex_toric {
                verify::toric_checks()
            } else {
                verify::all_checks(order, &b, a_floor, cache_dir)?
            };
            print!("{}", render::checks(&checks, cli.format));
            Ok(checks.iter().all(|c| c.passed))
        }
        Command::Cache { action } => {
            let dir = cache_dir.ok_or_else(|| {
                Failure::Config("no cache directory: pass --cache-dir or set P2DT_CACHE_DIR".into())
            })?;
            let io = |e: std::io::Error| Failure::Config(format!("cache: {e}"));
            match action {
                CacheAction::List => {
                    for (b, n) in cache::list(dir).map_err(io)? {
                        println!(
                            "b={b} rows={n} file={}",
                            cache::cache_path(dir, b).display()
                        );
                    }
                }
                CacheAction::Clear => {
                    let n = cache::clear(dir).map_err(io)?;
                    println!("removed {n} file(s)");
                }
                CacheAction::Warm { b, a_floor } => {
                    let bs = if b.is_empty() { DEFAULT_B.to_vec() } else { b };
                    check_b(&bs)?;
                    for b in bs {
                        let rows = cache::rows_for(b, a_floor, Some(dir))?;
                        println!("b={b} rows={}", rows.len());
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
