use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::range::Span;

pub const MAX_K: u64 = 200;
pub const MAX_N: u64 = 1_000_000;
pub const MAX_ELL: u64 = 16;

#[derive(Debug, Parser)]
#[command(name = "rtz", version, about = "Exact zero-location checks for Ramanujan-type polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Decimal digits for numeric cross-checks.
    #[arg(long, env = "RTZ_PRECISION_DIGITS", default_value_t = 30)]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Fill the `elapsed_ms` CSV column and table timings.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify R_{2k+1,n} over a (k, n) grid.
    Verify {
        #[arg(long, default_value = "1..10")]
        k: Span,
        #[arg(long, default_value = "2..5")]
        n: Span,
        /// Skip the numeric root cross-check.
        #[arg(long)]
        no_numeric: bool,
        /// Attach the coefficient-criteria block.
        #[arg(long)]
        criteria: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Partition the roots of the classic polynomials R_{2k+1}.
    Classic {
        #[arg(long, default_value = "1..10")]
        k: Span,
        #[arg(long)]
        no_numeric: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Probe the unit-circle conjecture for R^(ell).
    Conjecture {
        #[arg(long, default_value = "1..12")]
        k: Span,
        #[arg(long, default_value = "1..4")]
        ell: Span,
        #[command(flatten)]
        common: Common,
    },
    /// Lakatos and Schinzel checks on the coefficient table of H.
    Criteria {
        #[arg(long, default_value = "1..10")]
        k: Span,
        #[arg(long, default_value = "2..5")]
        n: Span,
        /// Evaluate the inequality transcript at this c instead of c_{n,k}.
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Identity checks.
    Identity {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value = "1..3")]
        k: Span,
        /// alpha as comma separated rational multiples of pi (ramanujan).
        #[arg(long, default_value = "1/2,1,2")]
        alpha_pi: String,
        /// Series terms (ramanujan).
        #[arg(long, default_value_t = 300)]
        terms: u64,
        /// Orders m (convolution).
        #[arg(long, default_value = "1..10")]
        m: Span,
        #[arg(long, default_value = "1/3", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "2/5", allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print exact coefficient tables.
    Expand {
        #[arg(long, value_enum, default_value_t = FamilyKind::RamanujanType)]
        family: FamilyKind,
        #[arg(long, default_value = "2")]
        k: Span,
        #[arg(long, default_value = "2")]
        n: Span,
        #[arg(long, default_value = "1")]
        ell: Span,
        #[command(flatten)]
        common: Common,
    },
    /// Print B_0 .. B_max.
    Bernoulli {
        #[arg(long, default_value_t = 20)]
        max: u64,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Verify { common, .. }
            | Command::Classic { common, .. }
            | Command::Conjecture { common, .. }
            | Command::Criteria { common, .. }
            | Command::Identity { common, .. }
            | Command::Expand { common, .. }
            | Command::Bernoulli { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Classic { .. } => "classic",
            Command::Conjecture { .. } => "conjecture",
            Command::Criteria { .. } => "criteria",
            Command::Identity { .. } => "identity",
            Command::Expand { .. } => "expand",
            Command::Bernoulli { .. } => "bernoulli",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Zeta-value series identity at alpha and beta = pi^2 / alpha (alias `ramanujan`)
    #[value(name = "eq1.2", alias = "ramanujan")]
    Ramanujan,
    /// Exact half-sum identity for the coefficients of H (alias `half-sum`)
    #[value(name = "eq5.15", alias = "half-sum")]
    HalfSum,
    /// Bernoulli polynomial convolution identity
    Convolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Classic,
    LalinRogers,
    RamanujanType,
    Generalized,
}
