use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Parses `x,y,z`.
pub fn triple(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 3 comma-separated numbers, got {}", v.len()))
}

#[derive(Parser, Debug)]
#[command(name = "cone-spectra", version, about = "Indicial roots, stability indices and model geometries of conical associatives")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Flat TOML file whose keys mirror flag names
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<String>,
    /// Worker threads; defaults to CONE_SPECTRA_THREADS, then all cores
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Laplace spectra of links
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Indicial roots and kernel dimensions in a window
    Indicial(IndicialArgs),
    /// Stability indices of a cone
    Stability(StabilityArgs),
    /// Fredholm index of the weighted operator on one end
    Index(IndexArgs),
    /// Lawlor necks
    #[command(subcommand)]
    Lawlor(LawlorCmd),
    /// Harvey-Lawson cone and smoothings
    #[command(subcommand)]
    Hl(HlCmd),
    /// G2 linear algebra self-checks
    #[command(subcommand)]
    G2(G2Cmd),
    /// Transverse pair of special Lagrangian planes
    Planes(PlanesArgs),
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCmd {
    Torus(TorusArgs),
    Sphere(SphereArgs),
    Mesh(MeshArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct TorusArgs {
    /// Metric entries g11,g12,g22
    #[arg(long, value_parser = triple, allow_hyphen_values = true)]
    pub metric: [f64; 3],
    #[arg(long, default_value_t = 20.0)]
    pub cutoff: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SphereArgs {
    #[arg(long, default_value_t = 20.0)]
    pub cutoff: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct MeshArgs {
    /// OFF file with a closed triangle mesh
    #[arg(long)]
    pub off: String,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Largest vertex count solved densely
    #[arg(long, default_value_t = 300)]
    pub dense_limit: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ConeArgs {
    /// hl, plane, plane-pair or torus:g11,g12,g22
    #[arg(long, conflicts_with = "table")]
    pub cone: Option<String>,
    /// CSV of `lambda,d` lines instead of a preset
    #[arg(long)]
    pub table: Option<String>,
    /// Eigenvalue cutoff for preset spectra
    #[arg(long, default_value_t = 42.0)]
    pub cutoff: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct IndicialArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub cone: ConeArgs,
    /// `lo:hi` (closed) or interval notation such as `(-1,1]`
    #[arg(long, default_value = "-3:1", allow_hyphen_values = true)]
    pub window: String,
    /// Also report Jacobi eigenvalues and the Morse index
    #[arg(long)]
    pub jacobi: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct StabilityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub cone: ConeArgs,
    /// Symmetry group dimension per component (preset default if omitted)
    #[arg(long)]
    pub sym_dim: Option<u32>,
    /// Stratum dimension per component
    #[arg(long)]
    pub stratum_dim: Option<u32>,
    /// Also report the null-torsion bound at this link area
    #[arg(long)]
    pub area: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ac,
    Cs,
}

#[derive(Args, Debug, Serialize)]
pub struct IndexArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub cone: ConeArgs,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    pub rate: f64,
    /// Report the wall crossing from --rate to this rate
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub sym_dim: Option<u32>,
    #[arg(long)]
    pub stratum_dim: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum LawlorCmd {
    Angles(AnglesArgs),
    Solve(SolveArgs),
    Profile(ProfileArgs),
    Verify(LawlorVerifyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct AnglesArgs {
    /// Parameters a1,a2,a3
    #[arg(long, value_parser = triple)]
    pub a: [f64; 3],
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SolveArgs {
    /// Target angles theta1,theta2,theta3
    #[arg(long, value_parser = triple)]
    pub theta: [f64; 3],
    /// Area constant A
    #[arg(long, default_value_t = 1.0)]
    pub area: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct ProfileArgs {
    #[arg(long, value_parser = triple)]
    pub a: [f64; 3],
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub y_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub y_max: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct DecayArgs {
    #[arg(long, default_value_t = 20.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = 400.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 12)]
    pub radii: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct LawlorVerifyArgs {
    #[arg(long, value_parser = triple)]
    pub a: [f64; 3],
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Half-width of the sampled y range
    #[arg(long, default_value_t = 20.0)]
    pub y_range: f64,
    /// Link direction for the decay fit, normalized
    #[arg(long, value_parser = triple, allow_hyphen_values = true, default_value = "1,2,2")]
    pub sigma: [f64; 3],
    #[command(flatten)]
    #[serde(flatten)]
    pub decay: DecayArgs,
}

#[derive(Subcommand, Debug)]
pub enum HlCmd {
    Verify(HlVerifyArgs),
    XiRelation(XiArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct HlVerifyArgs {
    /// Smoothing branch 1, 2 or 3; all three if omitted
    #[arg(long)]
    pub branch: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = 20.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub theta1: f64,
    #[arg(long, default_value_t = 1.9, allow_hyphen_values = true)]
    pub theta2: f64,
    #[arg(long, default_value_t = 20.0)]
    pub fit_r_min: f64,
    #[arg(long, default_value_t = 400.0)]
    pub fit_r_max: f64,
    #[arg(long, default_value_t = 12)]
    pub radii: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct XiArgs {
    #[arg(long, default_value_t = 50.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub theta1: f64,
    #[arg(long, default_value_t = 1.9, allow_hyphen_values = true)]
    pub theta2: f64,
}

#[derive(Subcommand, Debug)]
pub enum G2Cmd {
    Check(G2CheckArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct G2CheckArgs {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct PlanesArgs {
    #[arg(long, value_parser = triple)]
    pub theta: [f64; 3],
}
