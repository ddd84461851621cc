//! `latdist`: run the counting experiments and emit CSV or JSON tables.
//!
//! Exit codes: 0 success, 1 io or cache, 2 invalid input, 3 capacity or
//! overflow, 4 a failed check or a violated invariant.

mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latdist::acceptance::Suite;
use latdist::{Error, ErrorClass};

use table::{Format, Table};

const EXIT_IO: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "latdist",
    version,
    about = "Distinct distances and distance energy on integer lattices"
)]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Directory for the smallest-prime-factor sieve cache.
    #[arg(long, global = true, env = "LATDIST_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the table here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance statistics of the m x m grid.
    #[command(
        after_help = "Columns: side,N,x,energy,csBound,gapRatio,energy_over_N3lnN,x_sqrtlnN_over_N"
    )]
    SquareStats {
        #[arg(long = "side", required = true, value_parser = clap::value_parser!(u32).range(1..))]
        sides: Vec<u32>,
    },
    /// Distance energy of the L-shaped set with two arms of n points.
    #[command(
        after_help = "Columns: n,points,D,trivialEnergy,intraTrivialEnergy,crossIntegerPairs,energy,csBound,gapRatio,trivialEnergy_over_n3"
    )]
    Lshape {
        #[arg(long = "n", required = true, value_parser = clap::value_parser!(u32).range(1..))]
        arms: Vec<u32>,
    },
    /// Distinct distances of the W x H rectangle with W = n^(1-alpha), H = n^alpha.
    #[command(
        after_help = "alpha must be an exact rational p/q in (0, 1/2).\n\nColumns: n,alpha,W,H,iMin,sublatticeSize,D,D_over_n,sumR,sumD,excessSum,S,S_over_n2alpha_ln2n,lMin,lMax"
    )]
    Rect {
        #[arg(long = "n", required = true)]
        ns: Vec<u64>,
        #[arg(long = "alpha", required = true)]
        alphas: Vec<String>,
    },
    /// The representation-count identities on the sublattice.
    #[command(
        after_help = "alpha must be an exact rational p/q in (0, 1/2).\n\nColumns: n,alpha,sumR,sumD,sumR2,sumD2,sumBinomR2,sumBinomD2,holds"
    )]
    Identities {
        #[arg(long = "n", required = true)]
        ns: Vec<u64>,
        #[arg(long = "alpha", required = true)]
        alphas: Vec<String>,
    },
    /// Prefix sums of r(k)^2.
    #[command(after_help = "Columns: limit,rhat,rhat_over_klnk")]
    Rhat {
        #[arg(long = "limit", required = true)]
        limits: Vec<u64>,
    },
    /// Count of integers up to N that are sums of two squares.
    #[command(after_help = "Columns: limit,count,count_sqrtlnN_over_N")]
    Landau {
        #[arg(long = "limit", required = true)]
        limits: Vec<u64>,
    },
    /// Most lattice points in an arc of length N^beta, for every N <= nmax.
    #[command(
        after_help = "beta must be an exact rational p/q in (0, 1/2).\n\nColumns: N,beta,points,arcLength,angularWidth,maxCount,witnessStartAngle,axisCount,runningMax"
    )]
    Arcs {
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        beta: String,
        /// Only emit rows where the running maximum increases.
        #[arg(long)]
        records: bool,
    },
    /// Compare the fast routines with their brute-force oracles.
    #[command(after_help = "Columns: check,passed,detail")]
    OracleCheck {
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        /// Largest grid side for the histogram comparison.
        #[arg(long, default_value_t = 12)]
        side: u32,
    },
    /// Run the acceptance criteria.
    #[command(after_help = "Columns: criterion,name,passed,measured")]
    Accept {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
        /// Where the full suite writes its alpha x n distinct-distance grid
        /// (rect columns); stderr if omitted.
        #[arg(long)]
        grid_output: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let (table, passed): (Table, bool) = match &cli.command {
        Command::SquareStats { sides } => (commands::square_stats(sides)?, true),
        Command::Lshape { arms } => (commands::lshape(arms)?, true),
        Command::Rect { ns, alphas } => (commands::rect(ns, alphas)?, true),
        Command::Identities { ns, alphas } => (commands::identities(ns, alphas)?, true),
        Command::Rhat { limits } => (commands::rhat(limits)?, true),
        Command::Landau { limits } => (commands::landau(limits)?, true),
        Command::Arcs {
            nmax,
            beta,
            records,
        } => (commands::arc_scan(*nmax, beta, *records)?, true),
        Command::OracleCheck { limit, side } => {
            commands::oracle_check(*limit, *side, cli.cache_dir.as_deref())?
        }
        Command::Accept { suite, grid_output } => {
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::Full => Suite::Full,
            };
            let (table, passed) = commands::accept(suite);
            if suite == Suite::Full {
                let grid = commands::rect_grid()?;
                match grid_output {
                    Some(path) => write_table(&grid, cli.format, Some(path.as_path()))?,
                    None => grid.write(cli.format, io::stderr().lock())?,
                }
            }
            (table, passed)
        }
    };
    write_table(&table, cli.format, cli.output.as_deref())?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn write_table(table: &Table, format: Format, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()
        }
        None => table.write(format, io::stdout().lock()),
    }
}

#[cfg(feature = "parallel")]
fn run_with_threads(cli: &Cli) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Failure::Io(io::Error::other(e)))?;
    pool.install(|| run(cli))
}

#[cfg(not(feature = "parallel"))]
fn run_with_threads(cli: &Cli) -> Result<(), Failure> {
    run(cli)
}

/// `kind=... reason="..." detail="..."`, where reason is the message up to
/// its first colon.
fn report(e: &Error) -> (u8, String) {
    let (code, kind) = match e.class() {
        ErrorClass::Validation => (EXIT_VALIDATION, "validation"),
        ErrorClass::Capacity => (EXIT_CAPACITY, "capacity"),
        ErrorClass::Defect => (EXIT_CHECK, "invariant"),
        ErrorClass::Io => (EXIT_IO, "io"),
    };
    let msg = e.to_string();
    let (reason, detail) = msg.split_once(": ").unwrap_or((msg.as_str(), ""));
    (
        code,
        format!("kind={kind} reason={reason:?} detail={detail:?}"),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_with_threads(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            let (code, line) = report(&e);
            eprintln!("error: {line}");
            ExitCode::from(code)
        }
        // a closed stdout pipe is not worth a message
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: kind=io reason=\"io\" detail={:?}", e.to_string());
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Check) => {
            eprintln!("error: kind=check reason=\"check failed\" detail=\"\"");
            ExitCode::from(EXIT_CHECK)
        }
    }
}
