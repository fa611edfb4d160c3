use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Irreducibility, factorization and specialization searches over
/// Z, Q, GF(q) and k[u].
#[derive(Parser, Debug, Clone)]
#[command(name = "schinzel", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Coefficient ring: Z, Q, GF(p), GF(p^k), GF(p)[u], Q[u].
    #[arg(long, global = true, env = "SCHINZEL_RING")]
    pub ring: Option<String>,
    /// Seed for random strategies
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Maximum number of candidates to test
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Worker threads; output does not depend on this
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Factor a polynomial.
    Factor(PolyArgs),
    /// Test irreducibility.
    Irred(PolyArgs),
    /// Search for M with every P_i(x, M) irreducible.
    Schinzel(SearchArgs),
    /// Write Q as a sum of two irreducibles.
    Goldbach(GoldbachArgs),
    /// Build U with prescribed reducible fibres U - a_i V.
    Spectrum(SpectrumArgs),
    /// Scan P(x, M(x)) for every M of bounded degree over GF(q).
    SwanScan(SwanArgs),
    /// Fraction of random candidates that are witnesses.
    Density(DensityArgs),
    /// Re-check a JSON report emitted by this tool.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PolyArgs {
    #[arg(allow_hyphen_values = true)]
    pub poly: String,
    /// Variable count (x1..xn) or comma-separated names.
    #[arg(long)]
    pub vars: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SearchArgs {
    /// A polynomial in x1..xn and y (or y1..ym); repeatable.
    #[arg(long = "P", required = true, allow_hyphen_values = true)]
    #[serde(rename = "P")]
    pub p: Vec<String>,
    /// Partial degree bounds d1,...,dn of M.
    #[arg(long)]
    pub deg: String,
    /// Variable count (x1..xn) or comma-separated names; defaults to the
    /// length of --deg.
    #[arg(long)]
    pub vars: Option<String>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub strategy: StrategyArg,
    /// Integer coefficients of M range over [-B, B]
    #[arg(long)]
    pub coeff_bound: Option<u64>,
    /// Degree bound in u for coefficients over k[u]
    #[arg(long)]
    pub deg_u: Option<u32>,
    /// Require deg_u(M) in {d, p*d}.
    #[arg(long)]
    pub deg_u_target: Option<u32>,
    /// Require deg_{x_j}(M) = d_j.
    #[arg(long)]
    pub exact_degrees: bool,
    /// Require coprime coefficients on the top two monomials of M
    #[arg(long)]
    pub paper_mode: bool,
    /// Monomials allowed in M, comma-separated (must include 1).
    #[arg(long)]
    pub support: Option<String>,
    /// Stop after this many witnesses
    #[arg(long)]
    pub max_witnesses: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GoldbachArgs {
    #[arg(long = "Q", allow_hyphen_values = true)]
    #[serde(rename = "Q")]
    pub q: String,
    #[arg(long)]
    pub vars: Option<String>,
    /// Over GF(q)[x, y], bound deg_x(F) instead of deg(F).
    #[arg(long)]
    pub relaxed_degx: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    /// The field k; overrides --ring.
    #[arg(long)]
    pub field: Option<String>,
    /// Comma-separated a_1..a_t.
    #[arg(long = "S", default_value = "", allow_hyphen_values = true)]
    #[serde(rename = "S")]
    pub s: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a0: String,
    #[arg(long = "V", default_value = "1", allow_hyphen_values = true)]
    #[serde(rename = "V")]
    pub v: String,
    /// w_1..w_t in order; repeatable.
    #[arg(long = "w", allow_hyphen_values = true)]
    pub w: Vec<String>,
    #[arg(long)]
    pub deg: String,
    /// Integer coefficients of M range over [-B, B]
    #[arg(long)]
    pub coeff_bound: Option<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SwanArgs {
    #[arg(long = "P")]
    #[serde(rename = "P")]
    pub p: String,
    #[arg(long)]
    pub max_deg: u32,
    /// Include one record per candidate.
    #[arg(long)]
    pub records: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    pub file: PathBuf,
}
