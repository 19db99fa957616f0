//! Normalization and mean radius of converged wavefunctions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::EffectivePotentialParams;
use crate::numerov::WaveFunction;

/// Normalization must hold to this tolerance before observables are computed.
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Composite Simpson rule on uniformly spaced samples; the last three
/// intervals use the 3/8 rule when the interval count is odd.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {
            let intervals = n - 1;
            let (simpson_end, tail) = if intervals % 2 == 0 { (n - 1, 0.0) } else { (n - 4, three_eighths(&values[n - 4..], h)) };
            let mut odd = 0.0;
            let mut even = 0.0;
            for k in 1..simpson_end {
                if k % 2 == 1 {
                    odd += values[k];
                } else {
                    even += values[k];
                }
            }
            h / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[simpson_end]) + tail
        }
    }
}

fn three_eighths(v: &[f64], h: f64) -> f64 {
    3.0 * h / 8.0 * (v[0] + 3.0 * v[1] + 3.0 * v[2] + v[3])
}

impl WaveFunction {
    /// `∫u² dρ` over the grid.
    pub fn norm2(&self) -> f64 {
        let sq: Vec<f64> = self.u.iter().map(|v| v * v).collect();
        simpson(&sq, self.grid.step())
    }

    /// Index of the largest `|u|`.
    pub fn peak_index(&self) -> usize {
        self.u
            .iter()
            .enumerate()
            .fold((0, 0.0_f64), |best, (k, v)| if v.abs() > best.1 { (k, v.abs()) } else { best })
            .0
    }
}

/// Rescales to `∫u² dρ = 1` and makes the first significant lobe positive.
pub fn normalize(wf: &WaveFunction) -> Result<WaveFunction> {
    let norm2 = wf.norm2();
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let peak = wf.u.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let first = wf.u.iter().find(|v| v.abs() > 1e-6 * peak).copied().unwrap_or(1.0);
    let scale = first.signum() / norm2.sqrt();
    Ok(WaveFunction {
        grid: wf.grid,
        u: wf.u.iter().map(|v| v * scale).collect(),
    })
}

/// Mean radius in the dimensionless coordinate and in Bohr radii.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadiusResult {
    pub mean_rho: f64,
    pub mean_r_bohr: f64,
    pub dimension: u32,
}

/// `⟨r⟩ = ∫r^D R² dr / ∫r^{D−1} R² dr`.
///
/// With `R = u / r^{(D−1)/2}` both dimensions reduce to `∫ρu² / ∫u²`, and
/// `r = ρ/√ζ` converts to Bohr radii.
pub fn mean_radius(wf: &WaveFunction, problem: &EffectivePotentialParams) -> Result<RadiusResult> {
    let norm2 = wf.norm2();
    if (norm2 - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm2));
    }
    let h = wf.grid.step();
    let weighted: Vec<f64> = wf
        .u
        .iter()
        .enumerate()
        .map(|(k, v)| wf.grid.point(k) * v * v)
        .collect();
    let mean_rho = simpson(&weighted, h) / norm2;
    Ok(RadiusResult {
        mean_rho,
        mean_r_bohr: mean_rho / problem.atom.sqrt_zeta,
        dimension: problem.dimension(),
    })
}
