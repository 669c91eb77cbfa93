use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Exact partition functions, large-N expansions and perfect samples of the
/// five-vertex model with scalar-product boundary conditions.
#[derive(Parser, Debug)]
#[command(name = "fivevertex", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// P(1/x) at a rational point, or the whole polynomial in u = 1/x.
    Exact(ExactArgs),
    /// Checks that all exact routes agree on a sweep of small specs.
    OracleSweep(SweepArgs),
    /// Painlevé residual and local series of σ against their closed forms.
    SigmaCheck(SigmaArgs),
    /// Large-N expansion terms at one x.
    Thermo(ThermoArgs),
    /// Residual table of exact log P against the expansion.
    Converge(ConvergeArgs),
    /// f2 and its finite differences on a grid, or across a critical point.
    Phase(PhaseArgs),
    /// Perfect samples by coupling from the past.
    Sample(SampleArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SpecArgs {
    /// Number of lines.
    #[arg(long = "N")]
    pub n: u32,
    /// Number of rows.
    #[arg(long = "M")]
    pub m: u32,
    /// Number of columns.
    #[arg(long = "L")]
    pub l: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Enum,
    Pnew,
    Zhom1,
    Zhom2,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Rational point, "p/q" or a finite decimal; omit for the polynomial.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Pnew)]
    pub method: Method,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Largest M and L in the sweep.
    #[arg(long, default_value_t = 7)]
    pub max: u32,
    /// Comma-separated rational points.
    #[arg(long, default_value = "2,3,1/2,7/5,9/4")]
    pub points: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[arg(long = "N", requires_all = ["m", "l"], conflicts_with = "sweep")]
    pub n: Option<u32>,
    #[arg(long = "M")]
    pub m: Option<u32>,
    #[arg(long = "L")]
    pub l: Option<u32>,
    /// Check every spec with M, L up to this bound instead.
    #[arg(long)]
    pub sweep: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometryKind {
    Square,
    Rect,
}

#[derive(Args, Debug, Clone)]
pub struct GeometryArgs {
    #[arg(long, value_enum)]
    pub geometry: GeometryKind,
    /// Square aspect parameter.
    #[arg(long)]
    pub r: Option<f64>,
    /// Square offset M - L + 1.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<i64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Read the shape parameters off a finite spec instead.
    #[arg(long = "N", requires_all = ["m", "l"])]
    pub n: Option<u32>,
    #[arg(long = "M")]
    pub m: Option<u32>,
    #[arg(long = "L")]
    pub l: Option<u32>,
}

#[derive(Args, Debug)]
pub struct ThermoArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long)]
    pub x: String,
    /// Significant digits in the output.
    #[arg(long, default_value_t = 40)]
    pub precision: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// M = L = 2N.
    Square,
    /// M = 3N, L = 5N.
    Rect,
    /// M = 2N - 1, L = 2N, against the Regime III closed form of log Z̃.
    E0,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Comma-separated sizes N.
    #[arg(long, default_value = "6,12,24")]
    pub ns: String,
    /// Comma-separated rational points.
    #[arg(long)]
    pub x: String,
    /// Allowed growth of N|Δ| between consecutive sizes.
    #[arg(long, default_value_t = 3.0)]
    pub ratio: f64,
    #[arg(long, default_value_t = 40)]
    pub precision: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryArg {
    Upper,
    Lower,
}

#[derive(Args, Debug)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long, default_value_t = 0.05)]
    pub from: f64,
    #[arg(long, default_value_t = 20.0)]
    pub to: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// Report the jump across one critical point as JSON instead.
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
    #[arg(long, default_value_t = 40)]
    pub precision: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageFormat {
    Svg,
    Ppm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynamicsArg {
    HeatBath,
    PlusMinusOne,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub x: String,
    /// Sample k uses seed + k.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    #[arg(long, value_enum, default_value_t = DynamicsArg::HeatBath)]
    pub dynamics: DynamicsArg,
    /// Largest epoch, in sweeps, before giving up.
    #[arg(long, default_value_t = 1 << 20)]
    pub max_sweeps: u64,
    /// JSON-lines archive; stdout when omitted.
    #[arg(long)]
    pub archive: Option<PathBuf>,
    /// Picture of the first sample.
    #[arg(long)]
    pub image: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ImageFormat::Svg)]
    pub format: ImageFormat,
    #[arg(long, default_value_t = 12)]
    pub cell: u32,
    #[arg(long, default_value_t = 4)]
    pub stroke: u32,
    #[arg(long)]
    pub color_vertices: bool,
    /// Entropy map of the vertex types over all samples, as PPM.
    #[arg(long)]
    pub density: Option<PathBuf>,
}
