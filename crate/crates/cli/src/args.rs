use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlength::manybody::DEFAULT_GRID_POINTS;
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "qlength", version, about = "Quantum lengths of particles in a box, rulers and entangled measurements")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Points in sampled density profiles
    #[arg(long, global = true, default_value_t = DEFAULT_GRID_POINTS)]
    pub grid: usize,
    /// Unit system of the output
    #[arg(long, global = true, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
    /// Lattice constant in meters, required with `--units si`
    #[arg(long = "a0-meters", global = true)]
    pub a0_meters: Option<f64>,
    /// Electron transfer policy for `entangle`
    #[arg(long, global = true, value_enum, default_value_t = Policy::Pairwise)]
    pub policy: Policy,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Natural,
    Si,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    None,
    Pairwise,
    Single,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stats {
    Fermion,
    Boson,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// L2 and L4 of a box eigenstate, a uniform rod or a rod with gaps
    Length(LengthArgs),
    /// Sampled one-particle densities of filled boxes and stacked wells
    Density(DensityArgs),
    /// Ground-state length against particle count
    Fill(FillArgs),
    /// Segmented ruler lengths, cutting energies and optimal ruling
    Ruler(RulerArgs),
    /// Self-consistent length of stacked one-particle wells
    ParseCheck(ParseCheckArgs),
    /// Object and ruler exchanging electrons
    Entangle(EntangleArgs),
    /// Run a brute-force verifier directly
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthSystem {
    /// Eigenstate `n` of a box of width `--width`
    Box,
    /// Same as `box`
    Eigenstate,
    /// Uniform rod from `--x-lo` to `--x-hi`
    Rod,
    /// Rod made of the pieces given by `--segments`
    Segments,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthMethod {
    Analytic,
    Quadrature,
    Both,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthArgs {
    #[arg(long, value_enum, default_value_t = LengthSystem::Box)]
    pub system: LengthSystem,
    /// Box levels, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [1u32])]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    #[arg(long = "x-lo", default_value_t = 0.0, allow_hyphen_values = true)]
    pub x_lo: f64,
    #[arg(long = "x-hi", default_value_t = 1.0, allow_hyphen_values = true)]
    pub x_hi: f64,
    /// Rod pieces as `start:end`, or `start:end:empty` for a gap
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub segments: Vec<String>,
    #[arg(long, value_enum, default_value_t = LengthMethod::Analytic)]
    pub method: LengthMethod,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    /// Paired electrons in levels 1..n-max
    Fermion,
    /// `--particles` bosons in the ground level
    Boson,
    /// One particle in each of `--particles` ground-state wells spaced by `--shift`
    Mixture,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityArgs {
    #[arg(long, value_enum, default_value_t = DensityKind::Fermion)]
    pub kind: DensityKind,
    /// Highest filled level, comma separated for several profiles
    #[arg(long = "n-max", value_delimiter = ',', default_values_t = [1u32])]
    pub n_max: Vec<u32>,
    #[arg(long, default_value_t = 2)]
    pub particles: u64,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    /// Well spacing for `mixture`; the self-consistent spacing when omitted
    #[arg(long)]
    pub shift: Option<f64>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillArgs {
    /// Particle counts, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 4, 10, 100, 1000, 10000])]
    pub n: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Stats::Fermion)]
    pub statistics: Stats,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RulerArgs {
    /// Particles in the ruler
    #[arg(long)]
    pub n: u64,
    /// Segment counts, comma separated; every admissible count when omitted
    #[arg(long, value_delimiter = ',')]
    pub segments: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Stats::Fermion)]
    pub statistics: Stats,
    #[arg(long, default_value_t = 1.0)]
    pub lattice: f64,
    /// Report the optimal ruling instead
    #[arg(long, conflicts_with = "sweep")]
    pub optimal: bool,
    /// Report the precision residual of every admissible ruling instead
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParseCheckArgs {
    /// Numbers of stacked wells, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 10])]
    pub n: Vec<u64>,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntangleArgs {
    #[arg(long = "object-cells", default_value_t = 5)]
    pub object_cells: u64,
    #[arg(long = "object-lattice", default_value_t = 1.0)]
    pub object_lattice: f64,
    #[arg(long = "ruler-cells", default_value_t = 2)]
    pub ruler_cells: u64,
    #[arg(long = "ruler-lattice", default_value_t = 1.0)]
    pub ruler_lattice: f64,
    /// Reproduce the four standard cases just above the 6/5 and 12/5 crossings
    #[arg(long, conflicts_with = "log")]
    pub table: bool,
    /// Relative offset above each crossing used by `--table`
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    /// Emit one row per transferred electron
    #[arg(long)]
    pub log: bool,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Partial sums of 1/n^2
    Zeta(ZetaArgs),
    /// L2 and L4 by adaptive quadrature next to the closed forms
    Quadrature(QuadratureArgs),
    /// Spread of particle one from an explicit (anti)symmetrized grid wavefunction
    Grid(GridArgs),
    /// Ruling count at which the precision residual changes sign
    SignChange(SignChangeArgs),
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 10, 10000, 1000000000])]
    pub m: Vec<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureSystem {
    Box,
    Rod,
    Mixture,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureArgs {
    #[arg(long, value_enum, default_value_t = QuadratureSystem::Box)]
    pub system: QuadratureSystem,
    /// Box level
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    /// Well spacing for `mixture`
    #[arg(long, default_value_t = 0.626157247)]
    pub shift: f64,
    /// Wells in `mixture`
    #[arg(long, default_value_t = 2)]
    pub count: u32,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridArgs {
    /// Occupied levels, one per particle (2 or 3 particles)
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2])]
    pub levels: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Stats::Fermion)]
    pub statistics: Stats,
    #[arg(long, default_value_t = 256)]
    pub intervals: usize,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignChangeArgs {
    /// Electrons in the ruler
    #[arg(long, default_value_t = 10000)]
    pub n: u64,
}
