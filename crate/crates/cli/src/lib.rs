//! Command-line front end for the `planar-atom` solver.

pub mod args;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod tables;

use args::{Cli, Command};
use error::{CliError, Result};

/// Runs a parsed command line and returns the process exit status.
pub fn run(cli: &Cli) -> Result<i32> {
    if let Some(n) = cli.global.threads {
        configure_threads(n)?;
    }
    let g = &cli.global;
    match &cli.command {
        Command::Solve(a) => commands::solve(g, a),
        Command::Table { which } => tables::table(g, *which),
        Command::ScanPotential(a) => commands::scan_potential(g, a),
        Command::Wavefunction(a) => commands::wavefunction(g, a),
        Command::Report { markdown } => tables::report(g, *markdown),
        Command::K0 { x } => commands::k0(g, *x),
    }
}

fn configure_threads(n: usize) -> Result<()> {
    if n == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        // a pool that already exists (repeated runs in one process) is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}
