//! Physical constants, atom definitions and dimensionless effective potentials.
//!
//! Lengths are the dimensionless coordinate `ρ = √ζ r / a_B` and energies
//! are carried as `2E` in hartree, which is numerically the energy in
//! rydberg. The radial equation solved everywhere in this crate is
//! `u''(ρ) + [ε − U_eff(ρ)] u(ρ) = 0` with `ε` in Ry.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::bessel_k0;

/// Inverse fine-structure constant, i.e. the speed of light in atomic units.
/// Deliberately the four-decimal value, not a CODATA refinement.
pub const INVERSE_FINE_STRUCTURE: f64 = 137.0356;

/// Potential-strength unit factor; fixing it to one makes `ρ₀ = a_B`.
pub const V0: f64 = 1.0;

pub const RYDBERG_PER_HARTREE: f64 = 2.0;

/// Electron rest energy in eV, used to convert a photon mass in eV to `λ`.
pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.95;

/// Particle masses in electron masses.
pub mod mass {
    pub const ELECTRON: f64 = 1.0;
    pub const MUON: f64 = 206.768_283_0;
    pub const PROTON: f64 = 1_836.152_673_43;
    pub const DEUTERON: f64 = 3_670.482_967_88;
    pub const TRITON: f64 = 5_496.921_535_73;
}

/// The constant set used by every potential.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub inverse_fine_structure: f64,
    pub v0: f64,
    pub rydberg_per_hartree: f64,
}

impl Constants {
    pub const ATOMIC: Constants = Constants {
        inverse_fine_structure: INVERSE_FINE_STRUCTURE,
        v0: V0,
        rydberg_per_hartree: RYDBERG_PER_HARTREE,
    };
}

/// Converts a photon mass in eV to the ratio `λ = m_γ / m_e`.
pub fn lambda_from_ev(m_gamma_ev: f64) -> f64 {
    m_gamma_ev / ELECTRON_REST_ENERGY_EV
}

/// Reduced mass `m₁m₂/(m₁+m₂)` in the units of the inputs.
pub fn reduced_mass(m1: f64, m2: f64) -> f64 {
    m1 * m2 / (m1 + m2)
}

/// The six supported two-body atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Atom {
    Pe,
    De,
    Te,
    Pmu,
    Dmu,
    Tmu,
}

impl Atom {
    pub const ALL: [Atom; 6] = [Atom::Pe, Atom::De, Atom::Te, Atom::Pmu, Atom::Dmu, Atom::Tmu];

    pub fn token(self) -> &'static str {
        match self {
            Atom::Pe => "pe",
            Atom::De => "de",
            Atom::Te => "te",
            Atom::Pmu => "pmu",
            Atom::Dmu => "dmu",
            Atom::Tmu => "tmu",
        }
    }

    /// (orbiting particle, nucleus) masses in electron masses.
    pub fn masses(self) -> (f64, f64) {
        use mass::*;
        match self {
            Atom::Pe => (ELECTRON, PROTON),
            Atom::De => (ELECTRON, DEUTERON),
            Atom::Te => (ELECTRON, TRITON),
            Atom::Pmu => (MUON, PROTON),
            Atom::Dmu => (MUON, DEUTERON),
            Atom::Tmu => (MUON, TRITON),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Atom::ALL
            .into_iter()
            .find(|a| a.token() == s)
            .ok_or_else(|| Error::Config(format!("unknown atom `{s}` (expected one of pe de te pmu dmu tmu)")))
    }
}

/// Constituent masses and the derived reduced-mass ratio `ζ = μ/m_e`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AtomSpec {
    /// `None` for ad hoc mass pairs.
    pub atom: Option<Atom>,
    pub orbiter_mass: f64,
    pub nucleus_mass: f64,
    pub zeta: f64,
    pub sqrt_zeta: f64,
}

impl AtomSpec {
    pub fn from_masses(orbiter_mass: f64, nucleus_mass: f64) -> Result<Self> {
        for m in [orbiter_mass, nucleus_mass] {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::Domain {
                    context: "particle masses must be finite and positive",
                    value: m,
                });
            }
        }
        let zeta = reduced_mass(orbiter_mass, nucleus_mass);
        Ok(AtomSpec {
            atom: None,
            orbiter_mass,
            nucleus_mass,
            zeta,
            sqrt_zeta: zeta.sqrt(),
        })
    }

    pub fn label(&self) -> String {
        match self.atom {
            Some(a) => a.token().to_string(),
            None => format!("custom({},{})", self.orbiter_mass, self.nucleus_mass),
        }
    }
}

/// Builds the `AtomSpec` of one of the supported atoms from the tabulated masses.
pub fn make_atom(atom: Atom) -> AtomSpec {
    let (orbiter, nucleus) = atom.masses();
    let mut spec = AtomSpec::from_masses(orbiter, nucleus).expect("tabulated masses are positive");
    spec.atom = Some(atom);
    spec
}

/// Interaction between the orbiting particle and the nucleus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialKind {
    Coulomb3d,
    Coulomb2d,
    ChernSimons,
    /// The Chern-Simons potential with the extra `λ/α` prefactor used in earlier work.
    ChernSimonsJordan,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 4] = [
        PotentialKind::Coulomb3d,
        PotentialKind::Coulomb2d,
        PotentialKind::ChernSimons,
        PotentialKind::ChernSimonsJordan,
    ];

    pub fn token(self) -> &'static str {
        match self {
            PotentialKind::Coulomb3d => "coulomb3d",
            PotentialKind::Coulomb2d => "coulomb2d",
            PotentialKind::ChernSimons => "chern-simons",
            PotentialKind::ChernSimonsJordan => "chern-simons-jordan",
        }
    }

    pub fn is_chern_simons(self) -> bool {
        matches!(self, PotentialKind::ChernSimons | PotentialKind::ChernSimonsJordan)
    }

    pub fn dimension(self) -> u32 {
        match self {
            PotentialKind::Coulomb3d => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PotentialKind::ALL.into_iter().find(|k| k.token() == s).ok_or_else(|| {
            Error::Config(format!(
                "unknown potential `{s}` (expected one of coulomb3d coulomb2d chern-simons chern-simons-jordan)"
            ))
        })
    }
}

/// Interaction kind plus the photon mass ratio `λ = m_γ/m_e` for Chern-Simons kinds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    pub lambda: Option<f64>,
}

impl PotentialSpec {
    pub fn new(kind: PotentialKind, lambda: Option<f64>) -> Result<Self> {
        match (kind.is_chern_simons(), lambda) {
            (true, Some(l)) if l.is_finite() && l > 0.0 => Ok(PotentialSpec { kind, lambda }),
            (true, Some(l)) => Err(Error::Domain {
                context: "lambda must be finite and positive",
                value: l,
            }),
            (true, None) => Err(Error::Config(format!("potential `{kind}` requires lambda"))),
            (false, Some(_)) => Err(Error::Config(format!("potential `{kind}` does not take lambda"))),
            (false, None) => Ok(PotentialSpec { kind, lambda }),
        }
    }

    pub fn coulomb3d() -> Self {
        PotentialSpec {
            kind: PotentialKind::Coulomb3d,
            lambda: None,
        }
    }

    pub fn coulomb2d() -> Self {
        PotentialSpec {
            kind: PotentialKind::Coulomb2d,
            lambda: None,
        }
    }

    pub fn chern_simons(lambda: f64) -> Result<Self> {
        Self::new(PotentialKind::ChernSimons, Some(lambda))
    }

    pub fn chern_simons_jordan(lambda: f64) -> Result<Self> {
        Self::new(PotentialKind::ChernSimonsJordan, Some(lambda))
    }
}

/// Everything needed to evaluate `U_eff(ρ)` for one partial wave.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EffectivePotentialParams {
    pub potential: PotentialSpec,
    pub atom: AtomSpec,
    pub ell: u32,
}

impl EffectivePotentialParams {
    pub fn new(potential: PotentialSpec, atom: AtomSpec, ell: u32) -> Self {
        EffectivePotentialParams { potential, atom, ell }
    }

    pub fn dimension(&self) -> u32 {
        self.potential.kind.dimension()
    }

    /// `ℓ(ℓ+1)` in 3D, `ℓ² − ¼` in 2D.
    pub fn centrifugal_coefficient(&self) -> f64 {
        let l = self.ell as f64;
        match self.dimension() {
            3 => l * (l + 1.0),
            _ => l * l - 0.25,
        }
    }

    /// Regular indicial exponent `s` of `u ~ ρ^s` at the origin.
    pub fn indicial_exponent(&self) -> f64 {
        self.langer_index() + 0.5
    }

    /// `ν` such that the centrifugal coefficient equals `ν² − ¼`.
    pub fn langer_index(&self) -> f64 {
        let l = self.ell as f64;
        match self.dimension() {
            3 => l + 0.5,
            _ => l,
        }
    }

    /// Scale `a` of the Bessel argument `K₀(aρ)`, i.e. `λ/(α√ζ)`.
    pub fn k0_scale(&self) -> Option<f64> {
        self.potential
            .lambda
            .map(|l| l * INVERSE_FINE_STRUCTURE / self.atom.sqrt_zeta)
    }

    /// The interaction part of `U_eff` without the centrifugal term.
    pub fn interaction(&self, rho: f64) -> Result<f64> {
        check_rho(rho)?;
        let sqrt_zeta = self.atom.sqrt_zeta;
        match self.potential.kind {
            PotentialKind::Coulomb3d | PotentialKind::Coulomb2d => Ok(-2.0 * sqrt_zeta / rho),
            PotentialKind::ChernSimons => {
                let a = self.k0_scale().expect("validated on construction");
                Ok(-bessel_k0(a * rho)? / std::f64::consts::PI)
            }
            PotentialKind::ChernSimonsJordan => {
                let lambda = self.potential.lambda.expect("validated on construction");
                let a = self.k0_scale().expect("validated on construction");
                let prefactor = lambda * INVERSE_FINE_STRUCTURE / std::f64::consts::PI;
                Ok(-prefactor * bessel_k0(a * rho)?)
            }
        }
    }

    /// `U_eff(ρ)` in the dimensionless units of the radial equation.
    pub fn effective_potential(&self, rho: f64) -> Result<f64> {
        Ok(self.interaction(rho)? + self.centrifugal_coefficient() / (rho * rho))
    }
}

/// Free-function form of [`EffectivePotentialParams::effective_potential`].
pub fn effective_potential(params: &EffectivePotentialParams, rho: f64) -> Result<f64> {
    params.effective_potential(rho)
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            context: "rho must be finite and positive",
            value: rho,
        })
    }
}

/// Ratio of the earlier-work `K₀` prefactor `λ/(πα)` to `1/π`, i.e. `λ α⁻¹`.
pub fn jordan_variant_gap(potential: &PotentialSpec) -> Result<f64> {
    match (potential.kind.is_chern_simons(), potential.lambda) {
        (true, Some(l)) => Ok(l * INVERSE_FINE_STRUCTURE),
        _ => Err(Error::Config(format!(
            "jordan_variant_gap needs a Chern-Simons potential, got `{}`",
            potential.kind
        ))),
    }
}

/// Principal quantum number of a hydrogenic state in the reduced-radial form,
/// `N = nodes + ν + ½`; half-integer in 2D.
fn hydrogenic_principal(params: &EffectivePotentialParams, nodes: u32) -> f64 {
    nodes as f64 + params.langer_index() + 0.5
}

/// Exact Coulomb eigenvalue in Ry: `−ζ/n²` in 3D, `−4ζ/(2n−1)²` in 2D.
/// `None` for the Chern-Simons kinds, which have no closed form.
pub fn closed_form_energy(params: &EffectivePotentialParams, nodes: u32) -> Option<f64> {
    match params.potential.kind {
        PotentialKind::Coulomb3d | PotentialKind::Coulomb2d => {
            let n = hydrogenic_principal(params, nodes);
            Some(-params.atom.zeta / (n * n))
        }
        _ => None,
    }
}

/// Exact Coulomb `⟨r⟩` in Bohr radii: `[3N² − c]/(2ζ)` with `c` the centrifugal coefficient.
pub fn closed_form_mean_radius(params: &EffectivePotentialParams, nodes: u32) -> Option<f64> {
    match params.potential.kind {
        PotentialKind::Coulomb3d | PotentialKind::Coulomb2d => {
            let n = hydrogenic_principal(params, nodes);
            Some((3.0 * n * n - params.centrifugal_coefficient()) / (2.0 * params.atom.zeta))
        }
        _ => None,
    }
}
