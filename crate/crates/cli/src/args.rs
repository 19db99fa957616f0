use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_atom::{Atom, PotentialKind};

use crate::format::Format;

const PHOTON_MASS_HELP: &str = "\
Photon topological mass in eV, converted with m_e c^2 = 510998.95 eV.
Expected ranges: conventional type I superconductors (Al, In, Sn, Pb, Nb) 0.1-1 eV;
alloys (Pb-In, Nb-Ti, Nb-N, Pb-Bi) 2-10 eV; high temperature type II 10-20 eV.";

/// Hydrogen-like atoms under Coulomb and Chern-Simons interactions.
#[derive(Debug, Parser)]
#[command(name = "planar-atom", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Inner end of the grid in the dimensionless radius.
    #[arg(long, global = true)]
    pub rho_min: Option<f64>,

    /// Outer end of the grid; derived from the tail decay when omitted.
    #[arg(long, global = true)]
    pub rho_max: Option<f64>,

    /// Number of grid points.
    #[arg(long, global = true)]
    pub points: Option<usize>,

    /// Energy bisection tolerance in Ry.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Worker threads for table commands (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one bound state.
    Solve(SolveArgs),
    /// Recompute one of the reference tables.
    Table {
        #[arg(value_enum)]
        which: TableChoice,
    },
    /// Sample U_eff(rho) on a uniform grid.
    ScanPotential(ScanArgs),
    /// Emit the normalized reduced radial function u(rho).
    Wavefunction(WavefunctionArgs),
    /// Compare recomputed values with the reference tables.
    Report {
        /// Markdown instead of CSV/JSON.
        #[arg(long)]
        markdown: bool,
    },
    /// Evaluate K0(x) and report the regime used.
    K0 {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableChoice {
    Energies,
    Radii,
    EllStates,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// pe, de, te, pmu, dmu or tmu
    #[arg(long, value_parser = parse_atom)]
    pub atom: Atom,

    /// coulomb3d, coulomb2d, chern-simons or chern-simons-jordan.
    #[arg(long, value_parser = parse_potential)]
    pub potential: PotentialKind,

    /// Photon mass ratio m_gamma/m_e (1, 10, 100 eV are about 2e-6, 2e-5, 2e-4).
    #[arg(long, conflicts_with = "mgamma_ev")]
    pub lambda: Option<f64>,

    #[arg(long, long_help = PHOTON_MASS_HELP)]
    pub mgamma_ev: Option<f64>,

    /// Angular momentum quantum number
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Radial nodes of the requested state
    #[arg(long, default_value_t = 0)]
    pub nodes: usize,

    /// Also write the wavefunction (CSV) to this path.
    #[arg(long)]
    pub wavefunction: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Radial nodes of the requested state
    #[arg(long, default_value_t = 0)]
    pub nodes: usize,

    /// Keep every n-th grid sample.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub stride: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub state: StateArgs,

    #[arg(long, default_value_t = 0.05)]
    pub from: f64,

    #[arg(long, default_value_t = 10.0)]
    pub to: f64,

    #[arg(long, default_value_t = 400)]
    pub samples: usize,
}

fn parse_atom(s: &str) -> Result<Atom, String> {
    s.parse().map_err(|e: planar_atom::Error| e.to_string())
}

fn parse_potential(s: &str) -> Result<PotentialKind, String> {
    s.parse().map_err(|e: planar_atom::Error| e.to_string())
}
