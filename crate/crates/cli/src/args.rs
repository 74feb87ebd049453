use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hcone", version, about = "H transform, light-cone traces and scattering phases")]
pub struct Cli {
    #[command(flatten)]
    pub shared: Shared,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags accepted by every command.
#[derive(Debug, Clone, Args)]
pub struct Shared {
    /// Input file (CSV or JSON, chosen by extension).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; tables go to stdout when omitted where a command allows it.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid_max: Option<f64>,
    #[arg(long, global = true)]
    pub grid_count: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub grid_kind: Option<GridKindArg>,
    /// Output format; defaults to the output file extension.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed of the random test family.
    #[arg(long, global = true, default_value_t = hankel_cone::verify::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKindArg {
    Uniform,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformPath {
    /// Direct quadrature of the J0(2 sqrt(xy)) kernel.
    H,
    /// Hankel transform of order zero, `int J0(rs) b(s) sqrt(rs) ds`.
    Hankel0,
    /// Mellin multiplier Gamma(1 - s)/Gamma(s) on the critical line.
    Mellin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialArg {
    AMinus,
    BPlus,
    KleinGordon,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform a sampled function (columns x,value).
    Transform {
        #[arg(long, value_enum, default_value_t = TransformPath::H)]
        path: TransformPath,
        /// Also run the Mellin path and report the L2 discrepancy.
        #[arg(long)]
        both_paths: bool,
        /// Exponential decay rate of the input, overriding the inferred one.
        #[arg(long)]
        decay_rate: Option<f64>,
        #[arg(long, default_value_t = 80.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 4097)]
        tau_count: usize,
    },
    /// Evaluate a solution on a (t, x) grid, from a packet (JSON) or from
    /// Cauchy data (columns x,phi,phi_t) by Riemann's method.
    Propagate {
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', default_value = "0,1", allow_negative_numbers = true)]
        times: Vec<f64>,
    },
    /// Isometric expansion of a trace k into Cauchy data (x,F,G), or back.
    Expand {
        /// Read x,F,G and reconstruct k instead.
        #[arg(long)]
        inverse: bool,
        /// With --inverse: also report sup |g|, sup |k| on (0, a).
        #[arg(long)]
        support: Option<f64>,
    },
    /// Phase shifts of the exponential barriers against arg Gamma.
    Scatter {
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,4")]
        gammas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = PotentialArg::AMinus)]
        potential: PotentialArg,
        #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
        zeta0: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
    /// Run the acceptance suite.
    Verify {
        /// Comma-separated criterion numbers (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}
