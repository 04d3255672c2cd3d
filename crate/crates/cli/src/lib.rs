//! Front end for the `pirtrade` binary: each subcommand builds a report
//! string and a pass/fail status; `main` only handles I/O and exit codes.

mod achievable;
mod bounds;
mod curve;
mod lp;
mod report;
mod simulate;

pub use achievable::{family_points, parse_families, Family};
pub use report::{Format, ReportSpec, Table};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

/// Exit code when a requested verification fails.
pub const EXIT_VERIFICATION: i32 = 2;
/// Exit code when a resource guard or enumeration budget refuses the work.
pub const EXIT_GUARD: i32 = 3;
/// Environment variable overriding the exhaustive-verification budget.
pub const BUDGET_ENV: &str = "PIRTRADE_VERIFY_BUDGET";

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
    #[error("output error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] pirtrade_core::Error),
    #[error(transparent)]
    Bounds(#[from] pirtrade_bounds::Error),
    #[error(transparent)]
    Protocols(#[from] pirtrade_protocols::Error),
    #[error(transparent)]
    Lp(#[from] pirtrade_lp::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Guard(_)
            | Error::Protocols(pirtrade_protocols::Error::BudgetExceeded { .. })
            | Error::Lp(pirtrade_lp::Error::IterationLimit(_)) => EXIT_GUARD,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Parser)]
#[command(name = "pirtrade", version, about = "Storage/download tradeoffs for private information retrieval")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format; defaults to csv for tables and text for simulate/lp.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Digits after the decimal point in rendered decimals.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=60))]
    pub precision: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Achievable points of the closed-form families and their lower hull.
    Achievable {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Comma-separated: mds, uncoded, gmds, prop3, sunjafar, cyclic:<base,N0>.
        #[arg(long)]
        families: String,
    },
    /// Build a GF(2) code, dump its tables and run checks.
    Simulate {
        /// A, B or cyclic.
        #[arg(long)]
        construction: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        /// Number of servers of a cyclic composition.
        #[arg(long)]
        m: Option<u32>,
        /// Base construction of a cyclic composition (A or B).
        #[arg(long)]
        base: Option<String>,
        /// K of a construction-A base.
        #[arg(long = "base-k")]
        base_k: Option<u32>,
        /// Comma-separated subset of correctness, privacy, costs.
        #[arg(long, default_value = "correctness,privacy,costs")]
        checks: String,
    },
    /// Solve the relaxed entropic LP exactly.
    Lp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "0")]
        a0: String,
        #[arg(long, default_value = "1")]
        b0: String,
        /// Also write the LP in text form to this file.
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
        /// Lift the size guard.
        #[arg(long = "allow-large")]
        allow_large: bool,
    },
    /// Explicit lower bounds and their halfplanes.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Upper (achievable hull) and lower (halfplane envelope) curves with their ratio.
    Curve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// Tighten the lower curve with an LP solve at every grid point.
        #[arg(long = "lp-refine")]
        lp_refine: bool,
        /// Lift the LP size guard.
        #[arg(long = "allow-large")]
        allow_large: bool,
    },
}

/// A rendered report and whether all its checks passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    /// Extra lines for standard error (summaries that do not fit a CSV table).
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Outcome {
    fn pass(body: String) -> Self {
        Self {
            body,
            notes: Vec::new(),
            passed: true,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let spec = |default: Format| ReportSpec {
        format: cli.output.format.unwrap_or(default),
        precision: cli.output.precision as usize,
    };
    match &cli.command {
        Command::Achievable { n, k, families } => {
            achievable::run(*n, *k, &parse_families(families)?, &spec(Format::Csv))
        }
        Command::Simulate {
            construction,
            n,
            k,
            t,
            m,
            base,
            base_k,
            checks,
        } => {
            let proto = simulate::build(construction, *n, *k, *t, *m, base.as_deref(), *base_k)?;
            simulate::run(&proto, &simulate::parse_checks(checks)?, &spec(Format::Text))
        }
        Command::Lp {
            n,
            k,
            a0,
            b0,
            dump,
            allow_large,
        } => lp::run(
            *n,
            *k,
            &parse_rational(a0)?,
            &parse_rational(b0)?,
            dump.as_deref(),
            *allow_large,
            &spec(Format::Text),
        ),
        Command::Bounds { n, k } => bounds::run(*n, *k, &spec(Format::Csv)),
        Command::Curve {
            n,
            k,
            grid,
            lp_refine,
            allow_large,
        } => curve::run(*n, *k, *grid, *lp_refine, *allow_large, &spec(Format::Csv)),
    }
}

fn parse_rational(s: &str) -> Result<pirtrade_core::ExactRational> {
    s.parse()
        .map_err(|_| Error::Usage(format!("cannot parse {s:?} as a rational")))
}

/// Size guard for exact LP solves: the row count grows like `K N^8`.
pub fn lp_guard(n: u32, k: u32, allow_large: bool) -> Result<()> {
    if !allow_large && (n > 5 || k > 6) {
        return Err(Error::Guard(format!(
            "refusing the relaxed LP for N = {n}, K = {k}: its constraint count grows as O(K N^8) \
             and exact solves beyond N = 5, K = 6 take very long; pass --allow-large to proceed"
        )));
    }
    Ok(())
}
