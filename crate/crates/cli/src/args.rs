use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "bellstruct", version, about = "Symmetric Bell inequalities for W- and GHZ-type entanglement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Exact local bound of an inequality, with a maximizing strategy.
    Bound(BoundArgs),
    /// Quantum value and noise resistance of an inequality on a state.
    Eval(EvalArgs),
    /// White-noise resistance of the B_N family on W_N, as CSV.
    Table1(Table1Args),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Facets of the projected symmetric local polytope.
    Facets(FacetsArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    /// Inequality name (M3, S3, B, I4, I5, MABK_<N>, BN_<N>) or bracket string.
    #[arg(long)]
    pub ineq: String,
    /// Party count for a bracket that omits the full-correlator segment.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    W,
    Ghz,
    Gghz,
    Dicke,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[arg(long)]
    pub ineq: String,
    #[arg(long, value_enum)]
    pub state: StateKind,
    /// Number of parties (defaults to the inequality's).
    #[arg(long)]
    pub n: Option<usize>,
    /// Local dimension of a generalized GHZ state (uniform amplitudes).
    #[arg(long)]
    pub d: Option<usize>,
    /// Excitation number of a Dicke state.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated real Schmidt amplitudes of a generalized GHZ state.
    #[arg(long, allow_hyphen_values = true)]
    pub amplitudes: Option<String>,
    /// Setting-0 angle in the XZ plane: radians, or a multiple of pi such as `0.2677pi`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: Option<String>,
    /// JSON measurement scenario `{symmetric, parties: [[[x,y,z],[x,y,z]], ...]}`.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Use the closed-form W-state correlators (W state, symmetric angles only).
    #[arg(long)]
    pub closed_form: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct Table1Args {
    #[arg(long, value_delimiter = ',', default_values_t = crate::commands::TABLE1_SIZES)]
    pub n_list: Vec<usize>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum VerifyTarget {
    #[value(name = "appendixA")]
    AppendixA,
    #[value(name = "appendixB")]
    AppendixB,
    #[value(name = "appendixC")]
    AppendixC,
    #[value(name = "scbi-certificate")]
    ScbiCertificate,
    #[value(name = "frustration")]
    Frustration,
    #[value(name = "facets")]
    Facets,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: VerifyTarget,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct FacetsArgs {
    #[arg(long)]
    pub n: usize,
    /// Stop (exit 1) once this many symmetry orbits of facets are found.
    #[arg(long, default_value_t = bellstruct::polytope::DEFAULT_ORBIT_LIMIT)]
    pub max_orbits: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Multistart count; each suite has its own default.
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Convergence tolerance of the local searches.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Plain radians (`1.2`) or a multiple of pi (`0.25pi`, `2*pi`, `-pi`).
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let (num, scale) = match t.strip_suffix("pi").or_else(|| t.strip_suffix('π')) {
        Some("") => ("1", std::f64::consts::PI),
        Some("-") => ("-1", std::f64::consts::PI),
        Some(rest) => (rest.trim_end_matches('*'), std::f64::consts::PI),
        None => (t, 1.0),
    };
    num.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(|v| v * scale)
        .ok_or_else(|| format!("invalid angle {text:?}"))
}
