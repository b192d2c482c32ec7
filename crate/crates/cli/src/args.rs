use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "bernstein-lab",
    version,
    about = "Minimax errors, conformal maps and asymptotics for |x|^p and sgn x"
)]
pub struct Cli {
    /// Binary precision. Up to 106 bits runs in double-double, up to 237 in
    /// octuple precision.
    #[arg(long, default_value_t = 256, global = true)]
    pub bits: u32,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Directory for reports when `--output` is not given.
    #[arg(long, env = "BERNSTEIN_OUT_DIR", default_value = ".", global = true)]
    pub out_dir: PathBuf,

    /// Report path; `-` writes to stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// One minimax problem.
    Solve(FamilyArgs),
    /// Minimax errors over a degree range, optionally against predictions.
    Sweep(SweepArgs),
    /// Phase curve and coefficient sign checks for |x|^p.
    VerifyCurve(CurveArgs),
    /// Rescaled extremal functions against their limit profiles.
    Profiles(ProfileArgs),
    /// Constants and boundary values of the conformal maps.
    Conformal(ConformalArgs),
    /// Fixed-point solver for L sin(rho) sinh(rho~ + x) = x.
    Conjecture(ConjectureArgs),
    /// Change of variable between [-1, 1] and [a^2, 1].
    Convert(ConvertArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Sweep(_) => "sweep",
            Command::VerifyCurve(_) => "verify-curve",
            Command::Profiles(_) => "profiles",
            Command::Conformal(_) => "conformal",
            Command::Conjecture(_) => "conjecture",
            Command::Convert(_) => "convert",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    /// |x|^p on [-1,-a] u [a,1] by even polynomials.
    Absxp,
    /// sgn x on [-1,-a] u [a,1] by odd Laurent polynomials.
    SgnLaurent,
    /// (b+x)^-s on [-1, 1].
    Akhiezer,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    /// Degree (`l` for the akhiezer family). Sweeps take `lo..hi`
    /// (inclusive) or a comma list.
    #[arg(long)]
    pub m: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    /// Add predicted values and their ratio to the computed ones.
    #[arg(long)]
    pub predict: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CurveArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value = "0.01")]
    pub y_min: String,
    #[arg(long, default_value = "20")]
    pub y_max: String,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Points of the t grid in (-0.99, 0.99) for the sign check.
    #[arg(long, default_value_t = 11)]
    pub t_points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProfileArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub a: String,
    /// Degrees as `lo..hi` (inclusive) or a comma list.
    #[arg(long, default_value = "10,20")]
    pub m: String,
    #[arg(long, default_value = "0.1")]
    pub lambda_min: String,
    #[arg(long, default_value = "3")]
    pub lambda_max: String,
    #[arg(long, default_value_t = 30)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapName {
    /// The map for the odd Laurent problem, indexed by k.
    Hk,
    /// The map for |x|^p, indexed by p.
    W,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConformalArgs {
    #[arg(long, value_enum)]
    pub map: MapName,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long, default_value = "0.1")]
    pub xi_min: String,
    #[arg(long, default_value = "10")]
    pub xi_max: String,
    #[arg(long, default_value_t = 9)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConjectureArgs {
    #[arg(long, default_value = "1")]
    pub p: String,
    #[arg(long, default_value = "5")]
    pub l: String,
    #[arg(long, default_value_t = 40.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 4097)]
    pub nodes: usize,
    #[arg(long, default_value_t = 0.2)]
    pub theta: f64,
    #[arg(long, default_value_t = 20_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub residual_tol: f64,
    /// Also solve on two doubled grids and report the order ratio.
    #[arg(long)]
    pub order_study: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvertArgs {
    #[arg(long)]
    pub s: String,
    #[arg(long, conflicts_with = "b")]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    /// Solve both sides of the identity at this degree.
    #[arg(long)]
    pub l: Option<u32>,
}
