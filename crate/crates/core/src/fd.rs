//! Three-point finite-difference discretization of the radial operator,
//! used as an independent cross-check of the shooting solver.
//!
//! The operator `−u'' + U_eff u` is discretized through the
//! `D`-dimensional radial Laplacian in conservative form on the cell
//! centres `ρ_k = (k − ½)h`, so the regular boundary behaviour at the
//! origin (including the 2D `ℓ = 0` case) comes from the vanishing flux
//! weight `ρ^{D−1}` at `ρ = 0`. With `w_k = ρ_k^{(D−1)/2} R_k` the matrix
//! is symmetric tridiagonal, and its eigenvalues are located by Sturm
//! sequence bisection.

use crate::error::{Error, Result};
use crate::model::EffectivePotentialParams;
use crate::numerov::RadialGrid;

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    /// `off[k]` couples rows `k` and `k + 1`.
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via the LDLᵀ pivots).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for k in 0..self.diag.len() {
            let coupling = if k == 0 { 0.0 } else { self.off[k - 1] * self.off[k - 1] / d };
            d = self.diag[k] - x - coupling;
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[k].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin lower bound of the spectrum.
    pub fn lower_bound(&self) -> f64 {
        (0..self.len())
            .map(|k| {
                let left = if k > 0 { self.off[k - 1].abs() } else { 0.0 };
                let right = if k < self.off.len() { self.off[k].abs() } else { 0.0 };
                self.diag[k] - left - right
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// The `index`-th eigenvalue (0-based, ascending) inside `[lo, hi]`.
    pub fn eigenvalue(&self, index: usize, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
        if self.count_below(lo) > index || self.count_below(hi) <= index {
            return Err(Error::Config(format!(
                "eigenvalue {index} not inside [{lo}, {hi}]"
            )));
        }
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Builds the finite-difference matrix with the step and extent of `grid`.
pub fn build_matrix(problem: &EffectivePotentialParams, grid: &RadialGrid) -> Result<Tridiagonal> {
    let h = grid.step();
    let cells = (grid.rho_max / h).floor() as usize;
    if cells < 3 {
        return Err(Error::Config("finite-difference grid has fewer than three cells".into()));
    }
    let dim = problem.dimension() as i32;
    let weight = |rho: f64| rho.powi(dim - 1);
    // centrifugal term of the D-dimensional radial Laplacian acting on R
    let ell = problem.ell as f64;
    let angular = if dim == 3 { ell * (ell + 1.0) } else { ell * ell };
    let h2 = h * h;

    let centres: Vec<f64> = (1..=cells).map(|k| (k as f64 - 0.5) * h).collect();
    let interactions = crate::exec::try_map(&centres, |&r| problem.interaction(r))?;
    let mut diag = Vec::with_capacity(cells);
    let mut off = Vec::with_capacity(cells - 1);
    for (k, &rho) in centres.iter().enumerate() {
        let inner = weight(rho - 0.5 * h);
        let outer = weight(rho + 0.5 * h);
        let w = weight(rho);
        diag.push((inner + outer) / (h2 * w) + angular / (rho * rho) + interactions[k]);
        if k + 1 < cells {
            let next = centres[k + 1];
            off.push(-outer / (h2 * (w * weight(next)).sqrt()));
        }
    }
    Ok(Tridiagonal { diag, off })
}

/// Lowest-lying eigenvalue with `index` nodes, searched below `upper` (Ry).
pub fn fd_eigenvalue(problem: &EffectivePotentialParams, grid: &RadialGrid, index: usize, upper: f64) -> Result<f64> {
    let matrix = build_matrix(problem, grid)?;
    let lo = matrix.lower_bound() - 1.0;
    matrix.eigenvalue(index, lo, upper, 1e-14)
}
