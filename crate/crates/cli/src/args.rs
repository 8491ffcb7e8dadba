use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "camc-kit", version, about = "Generate and verify constant anisotropic mean curvature surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tessellate a surface (and its extension pieces) into a mesh
    Generate(GenerateArgs),
    /// Certify that Lambda is constant on a surface; exit 0 on pass, 1 on fail
    Check(CheckArgs),
    /// Integrate the circle-foliation ODE and dump the trajectory
    Integrate(IntegrateArgs),
    /// Profile curves theta = 0, theta = pi and the center curve in the plane y = 0
    Crosssection(CrossArgs),
    /// Total surface energy by quadrature
    Energy(EnergyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Type1,
    Type2,
    Type3,
    Rotational,
    Paraboloid,
    Log,
    Tilted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Analytic,
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Obj,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergyKind {
    Dirichlet,
    Hyperboloid,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Arc,
    Helix,
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OdeKind {
    Anisotropic,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphPatch {
    /// u = x
    PlaneX,
    /// u = x + 2y
    PlaneXy,
    /// u = x^2 - y^2
    Saddle,
}

/// Which surface, with which parameters.
#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Rotational family: coefficient of log r
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    /// Rotational family: additive constant
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    /// Declared constant Lambda (also the Lambda of the rotational family)
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: Option<f64>,
    /// Tilted family: spine curve
    #[arg(long, value_enum, default_value = "arc")]
    pub curve: CurveKind,
    /// Tilted family: radius of the spine arc or helix
    #[arg(long, default_value_t = 5.0)]
    pub curve_radius: f64,
    /// Tilted family: helix pitch
    #[arg(long, default_value_t = 1.0)]
    pub pitch: f64,
    /// Tilted family: radius of the foliating circles
    #[arg(long, default_value_t = 0.5)]
    pub tube_radius: f64,
    #[arg(long, value_enum, default_value = "analytic")]
    pub mode: Mode,
    #[arg(long, default_value_t = 1e-4)]
    pub fd_step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub smin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub smax: Option<f64>,
    #[arg(long)]
    pub ns: Option<usize>,
    #[arg(long)]
    pub ntheta: Option<usize>,
    /// Inset kept from open domain endpoints
    #[arg(long, default_value_t = 1e-3)]
    pub margin: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Number of pieces for Type I tiling; Types II/III add the half-turn copy when >= 2
    #[arg(long)]
    pub extend: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "dirichlet")]
    pub energy: EnergyKind,
    /// Bound on both the Lambda deviation and the Fourier modes
    /// [default: 1e-6 analytic, 1e-4 fd]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Highest Fourier mode projected
    #[arg(long, default_value_t = 12)]
    pub modes: usize,
    /// Conditioning floor on |nu3| (default depends on --mode)
    #[arg(long)]
    pub nu3_floor: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub mu: f64,
    #[arg(long, value_enum, default_value = "anisotropic")]
    pub ode: OdeKind,
    /// Seed from the closed form of this family at --s0 (uses --lambda, --mu, --c)
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub s0: f64,
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub rp0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub a0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub b0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub s_end: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub step: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CrossArgs {
    #[arg(value_enum)]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Cutting plane; only the symmetry plane y=0 is supported
    #[arg(long, default_value = "y=0")]
    pub plane: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "dirichlet")]
    pub energy: EnergyKind,
    /// Compare parametric and graph forms on a unit-square patch instead
    #[arg(long, value_enum)]
    pub graph: Option<GraphPatch>,
    /// Resolution per axis for --graph
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
