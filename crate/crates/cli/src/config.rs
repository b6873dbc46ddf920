//! Flags of every subcommand; the parsed value doubles as the run configuration
//! echoed by `--dump-config`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "quadvort",
    version,
    about = "Rotating Euler flows with quadratic vorticity on the unit disc"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format of the primary artifact.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write the primary artifact to this file instead of standard output.
    #[arg(long, global = true, conflicts_with = "out_dir")]
    pub output: Option<PathBuf>,

    /// Write every artifact of the subcommand into this directory.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,

    /// Compare a previously written CSV against a fresh run and recompute its residual columns.
    #[arg(long, global = true)]
    pub check: Option<PathBuf>,

    /// Print the resolved configuration as JSON and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProfileArgs {
    /// Curvature A of f₀(r) = A r² + B.
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: f64,
    /// Offset B of f₀(r) = A r² + B.
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: f64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Tabulate ζ_n on a grid of x in all three formulations.
    Dispersion {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Mode numbers: `n`, `lo:hi:step` or a comma list.
        #[arg(long)]
        n: String,
        /// Grid `lo:hi:count` of x ≤ 1.
        #[arg(long, default_value = "-3:0.95:40", allow_hyphen_values = true)]
        x_grid: String,
    },
    /// Roots of ζ_n in the window assigned by the profile's regime.
    Eigenvalues {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Mode numbers: `n`, `lo:hi:step` or a comma list.
        #[arg(long)]
        n: String,
        /// Largest accepted |ζ_n(x_n)|.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Kernel generator h*_n and H_n at the mode-n eigenvalue.
    Kernel {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        n: u32,
        /// Chebyshev nodes in t = r².
        #[arg(long, default_value_t = 129)]
        nodes: usize,
        /// Points of the output r grid.
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Transversality pairing at the mode-n eigenvalue.
    Transversality {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 129)]
        nodes: usize,
    },
    /// Closed form and area-quadrature oracle of one disc integral.
    Potentials {
        /// Identity number, 1 to 8.
        #[arg(long)]
        identity: u8,
        /// Angular mode of h and k.
        #[arg(long, default_value_t = 1)]
        mode: u32,
        /// Evaluation point `x,y` in the closed unit disc.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Radial profile curvature.
        #[arg(long = "A", default_value_t = 1.0, allow_hyphen_values = true)]
        a: f64,
        /// Radial profile offset.
        #[arg(long = "B", default_value_t = 0.0, allow_hyphen_values = true)]
        b: f64,
        /// Oracle nodes `radial,angular`.
        #[arg(long, default_value = "160,256")]
        grid: String,
    },
    /// Trajectory of the relative-frame field through z and its period.
    Orbit {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Frame angular velocity Ω.
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
        /// Starting point `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Angular mode n of the perturbation h = rⁿ cos(nθ).
        #[arg(long, requires = "amp")]
        mode: Option<u32>,
        /// Perturbation amplitude ε.
        #[arg(long, requires = "mode", allow_hyphen_values = true)]
        amp: Option<f64>,
        /// Integrator tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Regime report and eigenvalue table, or a sweep over B.
    Regime {
        /// Curvature A.
        #[arg(long = "A", allow_hyphen_values = true)]
        a: f64,
        /// Offset B; required unless `--map` is given.
        #[arg(
            long = "B",
            allow_hyphen_values = true,
            required_unless_present = "map"
        )]
        b: Option<f64>,
        /// Largest mode of the eigenvalue table.
        #[arg(long, default_value_t = 16)]
        m_max: u32,
        /// Skip the transversality pairing in the table.
        #[arg(long)]
        no_transversality: bool,
        /// Sweep B instead of reporting one profile.
        #[arg(long, requires = "b_grid", conflicts_with = "b")]
        map: bool,
        /// Grid `lo:hi:count` of B for `--map`.
        #[arg(long = "B-grid", allow_hyphen_values = true)]
        b_grid: Option<String>,
        /// Also count modes m ≤ this bound with a root in each map row.
        #[arg(long)]
        map_search: Option<u32>,
    },
    /// Run a built-in check suite and print a pass table.
    Selftest {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Seed of the randomized cases.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hypergeom,
    Dispersion,
    Kernel,
    Potentials,
    Flow,
    Regimes,
    All,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dispersion { .. } => "dispersion",
            Command::Eigenvalues { .. } => "eigenvalues",
            Command::Kernel { .. } => "kernel",
            Command::Transversality { .. } => "transversality",
            Command::Potentials { .. } => "potentials",
            Command::Orbit { .. } => "orbit",
            Command::Regime { .. } => "regime",
            Command::Selftest { .. } => "selftest",
        }
    }
}
