use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "spinlift", version, about = "Satake parameters, local factors and the degree-3 spinor lift")]
pub struct Cli {
    /// Fixture file with Hecke eigenvalue records.
    #[arg(long, global = true, env = "SPINLIFT_FIXTURES", default_value = "fixtures.json")]
    pub fixtures: PathBuf,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Absolute tolerance on log_p moduli in cuspidality checks.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive, allow_negative_numbers = true)]
    pub log_tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// one `path = value` line per leaf
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fixture generation.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
    /// Satake parameters of a fixture record at a prime.
    Satake(LabelPrime),
    /// Local L-factor of a fixture record at a prime.
    LocalFactor(LocalFactorArgs),
    /// Lift a degree-1 and a degree-2 record to degree 3.
    Lift(LiftArgs),
    /// Refute the Eisenstein models for a lift.
    Cuspidality(CuspidalityArgs),
    /// Hodge types and the weight solver.
    #[command(subcommand)]
    Hodge(HodgeCmd),
    /// Critical integers of the degree-3 spin L-function.
    Critical(WeightArg),
    /// Gamma profile of the degree-3 spin L-function.
    Gamma(GammaArgs),
    /// Truncated Euler product of the lifted L-function.
    Lvalue(LvalueArgs),
    /// End-to-end verification pipelines.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Any module output under the common schema.
    Report(ReportArgs),
}

#[derive(Debug, Subcommand)]
pub enum FixturesCmd {
    /// Compute eigenvalue records from q-expansions and write them out.
    Gen {
        /// Output path; defaults to the --fixtures path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        prime_bound: u64,
        /// Number of q-expansion terms (raised to the prime bound if smaller).
        #[arg(long, default_value_t = 64)]
        terms: usize,
    },
}

#[derive(Debug, Args)]
pub struct LabelPrime {
    #[arg(long)]
    pub label: String,
    #[arg(long)]
    pub p: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FactorKind {
    Spin,
    Standard,
}

#[derive(Debug, Args)]
pub struct LocalFactorArgs {
    #[command(flatten)]
    pub at: LabelPrime,
    #[arg(long, value_enum, default_value_t = FactorKind::Spin)]
    pub kind: FactorKind,
    /// Complex coefficients from Satake parameters instead of exact integers.
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// Degree-1 record label.
    #[arg(long)]
    pub h: String,
    /// Degree-2 record label.
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub p: u64,
    /// Check the tensor identity and the eigenvalue product.
    #[arg(long)]
    pub verify: bool,
    /// Exact integer verification (the default).
    #[arg(long, conflicts_with = "numeric")]
    pub exact: bool,
    /// Floating-point verification.
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Debug, Args)]
pub struct CuspidalityArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub p: u64,
    /// Degree-1 record; without --h/--g a synthetic lift is used.
    #[arg(long, requires = "g")]
    pub h: Option<String>,
    #[arg(long, requires = "h")]
    pub g: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HodgeKind {
    Gl2,
    Gsp4,
    Gsp6,
}

#[derive(Debug, Subcommand)]
pub enum HodgeCmd {
    Show {
        #[arg(long = "type", value_enum)]
        kind: HodgeKind,
        #[arg(long)]
        weight: u32,
    },
    Solve {
        #[arg(long, default_value_t = 8)]
        min: u32,
        #[arg(long, default_value_t = 40)]
        max: u32,
    },
}

#[derive(Debug, Args)]
pub struct WeightArg {
    #[arg(long)]
    pub k: u32,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long)]
    pub k: u32,
    /// Also print the Rankin-Selberg profile at (k-2, k) and compare.
    #[arg(long)]
    pub compare_rs: bool,
}

#[derive(Debug, Args)]
pub struct LvalueArgs {
    #[arg(long)]
    pub h: String,
    #[arg(long)]
    pub g: String,
    /// Real part of s.
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    /// Imaginary part of s.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long)]
    pub prime_bound: u64,
    /// Extra exponent in the root bound |r| <= p^{w/2 + shift}; defaults to
    /// 1/2 for Saito-Kurokawa records (label prefix "SK.") and 0 otherwise.
    #[arg(long)]
    pub root_shift: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// tau(2) * lambda_2(G) = -293760 and its companions.
    Miyawaki,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subject {
    HodgeSolve,
    Critical,
    Gamma,
    Cuspidality,
    LocalFactor,
    Fixtures,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, value_enum)]
    pub subject: Subject,
    #[arg(long, default_value_t = 14)]
    pub k: u32,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long, default_value_t = 8)]
    pub min: u32,
    #[arg(long, default_value_t = 40)]
    pub max: u32,
    #[arg(long, default_value = "Delta.12.1")]
    pub label: String,
}
