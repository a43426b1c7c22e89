use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "iabcache", version, about = "Coverage, throughput and joint cache/spectrum optimization for IAB HetNets")]
pub struct Cli {
    /// Configuration file (key = value, dBm/dB/degrees); reference values when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every randomized step; the configuration seed when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory receiving CSV, JSON and manifest files.
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Also write coverage integrand samples (analyze) and per-realization records (validate).
    #[arg(long, global = true)]
    pub trace: bool,
    /// Print the reference configuration and exit.
    #[arg(long)]
    pub emit_default_config: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coverage and throughput at a list of SINR thresholds.
    Analyze(AnalyzeArgs),
    /// Throughput or optimizer output along one or two parameter axes.
    Sweep(SweepArgs),
    /// Joint optimizer and reference schemes.
    Optimize(OptimizeArgs),
    /// Analytic coverage against Monte Carlo estimates.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Thresholds in dB, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub gamma_db: Vec<f64>,
    /// SBS cache size in files.
    #[arg(long = "cache", default_value_t = 200)]
    pub cache: usize,
    /// Access share of the spectrum.
    #[arg(long, default_value_t = 0.9)]
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    #[value(name = "C")]
    Cache,
    #[value(name = "eta")]
    Eta,
    #[value(name = "gamma0")]
    Gamma0,
    #[value(name = "gamma_p")]
    GammaP,
    #[value(name = "omega_ca")]
    OmegaCa,
}

impl Axis {
    pub fn column(self) -> &'static str {
        match self {
            Axis::Cache => "C",
            Axis::Eta => "eta",
            Axis::Gamma0 => "gamma0_dB",
            Axis::GammaP => "gamma_p",
            Axis::OmegaCa => "omega_ca",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    /// Throughput at the fixed cache size and spectrum share.
    Apt,
    /// Joint optimization at every grid point.
    Jcspa,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub axis: Axis,
    /// `start:stop:step`, inclusive of stop.
    #[arg(long, conflicts_with = "values")]
    pub range: Option<String>,
    /// Explicit axis values, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub values: Vec<f64>,
    /// Second axis, evaluated for every value of the first.
    #[arg(long, value_enum, requires = "inner_range")]
    pub inner_axis: Option<Axis>,
    #[arg(long)]
    pub inner_range: Option<String>,
    #[arg(long, value_enum, default_value = "apt")]
    pub solver: Solver,
    /// Cache size when C is not swept.
    #[arg(long = "cache", default_value_t = 200)]
    pub cache: usize,
    /// Spectrum share when eta is not swept.
    #[arg(long, default_value_t = 0.9)]
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Jcspa,
    Baselines,
    All,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub algorithm: Algorithm,
    #[arg(long, default_value_t = 1e-5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 20)]
    pub iter_max: usize,
    /// Random initial cache sizes besides the empty cache.
    #[arg(long, default_value_t = 3)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Realizations per cache size.
    #[arg(long, default_value_t = 20_000)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,5,10,15")]
    pub gamma_db: Vec<f64>,
    #[arg(long = "caches", value_delimiter = ',', default_value = "0,200,800")]
    pub caches: Vec<usize>,
    /// Allowed gap between analytic and empirical coverage.
    #[arg(long, default_value_t = 0.03)]
    pub tolerance: f64,
    /// Allowed gap for the interference-free pairs.
    #[arg(long, default_value_t = 0.02)]
    pub noise_limited_tolerance: f64,
}
