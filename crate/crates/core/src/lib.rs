//! Bound states of hydrogen-like atoms in two and three dimensions under
//! Coulomb and Chern-Simons interactions.
//!
//! The radial problem `u'' + [ε − U_eff(ρ)] u = 0` is solved by Numerov
//! shooting ([`numerov`]); energies are in rydberg and lengths in the
//! dimensionless coordinate `ρ = √ζ r / a_B`.

pub mod batch;
pub mod error;
pub mod exec;
pub mod fd;
pub mod model;
pub mod numerov;
pub mod observables;
pub mod specfun;

pub use error::{Error, Result};
pub use model::{make_atom, Atom, AtomSpec, EffectivePotentialParams, PotentialKind, PotentialSpec};
pub use numerov::{solve_state, EigenResult, RadialGrid, SolverConfig, WaveFunction};
pub use observables::{mean_radius, RadiusResult};
