use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lclab_core::{ArithFn, HFn, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "lclab",
    version,
    about = "Exact coefficient triangles and log-concavity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format. Checks support `table` and `json`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,

    /// Triangle cache directory. `LCLAB_CACHE` takes precedence.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the triangle A^{g,h} for 1 <= m <= n <= N.
    Triangle(TriangleArgs),
    /// Run a verification.
    #[command(subcommand)]
    Check(CheckCommand),
}

/// `--g` selector: a built-in name or `custom=PATH`.
#[derive(Debug, Clone)]
pub enum GSpec {
    Builtin(ArithFn),
    Custom(PathBuf),
}

impl FromStr for GSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_prefix("custom=") {
            Some(path) if !path.is_empty() => Ok(GSpec::Custom(PathBuf::from(path))),
            Some(_) => Err("custom= needs a path".into()),
            None => ArithFn::from_name(s)
                .map(GSpec::Builtin)
                .map_err(|e| format!("{e}; expected one|id|square|sigma|sigma_k=K|custom=PATH")),
        }
    }
}

fn parse_g(s: &str) -> Result<GSpec, String> {
    s.parse()
}

fn parse_h(s: &str) -> Result<HFn, String> {
    HFn::from_name(s).map_err(|e| e.to_string())
}

/// Integers or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("not a rational number: {s:?}"))
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// one | id | square | sigma | sigma_k=K | custom=PATH
    #[arg(long, value_parser = parse_g)]
    pub g: GSpec,

    /// one | id
    #[arg(long, value_parser = parse_h)]
    pub h: HFn,
}

#[derive(Debug, Args)]
pub struct TriangleArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct ColumnRange {
    /// A single column.
    #[arg(long, conflicts_with_all = ["m_from", "m_to"])]
    pub m: Option<usize>,

    #[arg(long)]
    pub m_from: Option<usize>,

    #[arg(long)]
    pub m_to: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    #[arg(long)]
    pub n_max: usize,

    #[command(flatten)]
    pub columns: ColumnRange,
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Row-wise log-concavity for 1 <= n <= N.
    Horizontal(ScanArgs),
    /// Column-wise log-concavity on rows 0..=N.
    Vertical(ScanArgs),
    /// Vertical log-concavity of column m on 1 <= n <= floor(C^m).
    Cscan {
        #[command(flatten)]
        family: FamilyArgs,

        #[arg(long = "C", value_name = "P/Q", value_parser = parse_rational)]
        c: Rational,

        #[arg(long)]
        m_max: usize,

        /// Also scan column 1 (skipped by default).
        #[arg(long)]
        include_m1: bool,
    },
    /// m! A^{g,id}_{n,m} = A^{g~,1}_{n,m}.
    Conversion {
        #[arg(long, value_parser = parse_g)]
        g: GSpec,

        #[arg(long)]
        n_max: usize,
    },
    /// Triangle evaluations against generating-series coefficients.
    Genfun {
        #[command(flatten)]
        family: FamilyArgs,

        #[arg(long)]
        n_max: usize,

        /// Comma-separated evaluation points [default: 1,2,3,-1,1/2]
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            value_parser = parse_rational
        )]
        xs: Vec<Rational>,
    },
    /// P^{g,id}_n(x) against the Euler product expansion.
    Euler {
        #[arg(long, value_parser = parse_g)]
        g: GSpec,

        #[arg(long)]
        n_max: usize,

        #[arg(long, value_name = "P/Q", allow_hyphen_values = true, value_parser = parse_rational)]
        x: Rational,
    },
    /// Hook-length polynomials against the shifted D'Arcais rows.
    NoIdentity {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Log-concavity of the coefficients of f(q)^m, f = sum sigma(n) q^n / n.
    Hz {
        #[arg(long = "C", value_name = "P/Q", value_parser = parse_rational)]
        c: Rational,

        #[arg(long)]
        m_max: usize,
    },
    /// First vertical failure of each column of n! A^{1,id}.
    Table1 {
        #[arg(long)]
        m_max: usize,

        #[arg(long, default_value_t = 1500)]
        n_limit: usize,
    },
    /// Built triangles against closed forms for six families.
    ClosedForms {
        #[arg(long)]
        n_max: usize,
    },
}

impl CheckCommand {
    pub fn name(&self) -> &'static str {
        match self {
            CheckCommand::Horizontal(_) => "horizontal",
            CheckCommand::Vertical(_) => "vertical",
            CheckCommand::Cscan { .. } => "cscan",
            CheckCommand::Conversion { .. } => "conversion",
            CheckCommand::Genfun { .. } => "genfun",
            CheckCommand::Euler { .. } => "euler",
            CheckCommand::NoIdentity { .. } => "no-identity",
            CheckCommand::Hz { .. } => "hz",
            CheckCommand::Table1 { .. } => "table1",
            CheckCommand::ClosedForms { .. } => "closed-forms",
        }
    }
}
