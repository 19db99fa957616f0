use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the function it was passed to.
    #[error("domain error in {context}: {value}")]
    Domain { context: &'static str, value: f64 },

    /// Inconsistent or unsupported configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// The energy bracket does not contain a state with the requested node count.
    #[error("state with {node_target} nodes not bracketed; scan: {}", format_scan(.scan))]
    NotBracketed {
        node_target: usize,
        scan: Vec<(f64, usize)>,
    },

    /// Both shooting sweeps vanish at the matching point.
    #[error("degenerate seeds: both sweeps vanish at match index {0}")]
    DegenerateSeed(usize),

    /// A wavefunction with zero norm cannot be normalized.
    #[error("wavefunction has zero norm")]
    ZeroNorm,

    /// An observable was requested on a wavefunction that is not unit-normalized.
    #[error("wavefunction not normalized: norm = {0}")]
    NotNormalized(f64),
}

fn format_scan(scan: &[(f64, usize)]) -> String {
    scan.iter()
        .map(|(e, n)| format!("E={e:.6e} Ry -> {n} nodes"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
