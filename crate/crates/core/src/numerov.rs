//! Numerov integration and two-sided shooting for `u'' + [ε − U_eff(ρ)] u = 0`.
//!
//! The uniform-grid recurrence is standard Numerov. The one modification is
//! the start of the outward sweep: near the origin the regular solution
//! behaves as `ρ^s` with non-integer `s` in 2D, and the uniform recurrence
//! loses its order there. The first [`JOIN_POINTS`] grid points are therefore
//! reached by Numerov in the Langer variable `x = ln ρ`, where the solution
//! is smooth, and the uniform sweep takes over from that point. The residual
//! error of the uniform sweep near the join falls off as `JOIN_POINTS⁻⁴`
//! independently of the step.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{closed_form_energy, EffectivePotentialParams};
use crate::observables::normalize;

/// Values above this magnitude trigger an in-place rescale during a sweep.
pub const RENORM_THRESHOLD: f64 = 1e100;

/// Grid index where the log-variable start hands over to the uniform sweep,
/// capped at 2% of the grid on coarse meshes.
pub const JOIN_POINTS: usize = 400;

const INNER_DX: f64 = 2e-3;
const INNER_SPAN: f64 = 36.841_361_487_904_734; // ln(1e16)
const TAIL_EFOLDS: f64 = 25.0;

/// Uniform mesh in the dimensionless radial coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialGrid {
    pub rho_min: f64,
    pub rho_max: f64,
    pub n_points: usize,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 1000;

    pub fn new(rho_min: f64, rho_max: f64, n_points: usize) -> Result<Self> {
        if !(rho_min.is_finite() && rho_min > 0.0) {
            return Err(Error::Domain {
                context: "rho_min must be finite and positive",
                value: rho_min,
            });
        }
        if !(rho_max.is_finite() && rho_max > rho_min) {
            return Err(Error::Domain {
                context: "rho_max must be finite and above rho_min",
                value: rho_max,
            });
        }
        if n_points < Self::MIN_POINTS {
            return Err(Error::Config(format!(
                "grid needs at least {} points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        Ok(RadialGrid {
            rho_min,
            rho_max,
            n_points,
        })
    }

    pub fn step(&self) -> f64 {
        (self.rho_max - self.rho_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        self.rho_min + k as f64 * self.step()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.point(k)).collect()
    }

    /// Same extent with the step halved.
    pub fn refined(&self) -> RadialGrid {
        RadialGrid {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }

    fn join_index(&self) -> usize {
        JOIN_POINTS.min((self.n_points - 1) / 50)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Outward,
    Inward,
}

/// Where the outward and inward sweeps are matched.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchPolicy {
    /// Outermost classical turning point; grid midpoint if none is interior.
    OuterTurningPoint,
    /// A fixed fraction of the grid.
    FixedFraction(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolverConfig {
    /// `(E_lo, E_hi)` in Ry; `None` selects the per-potential default.
    pub energy_bracket: Option<(f64, f64)>,
    pub bisection_tol: f64,
    pub defect_tol: f64,
    pub max_bisections: usize,
    pub match_policy: MatchPolicy,
    pub rho_min: f64,
    /// `None` derives the outer boundary from the tail decay of the state.
    pub rho_max: Option<f64>,
    pub n_points: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            energy_bracket: None,
            bisection_tol: 1e-8,
            defect_tol: 1e-6,
            max_bisections: 200,
            match_policy: MatchPolicy::OuterTurningPoint,
            rho_min: 1e-6,
            rho_max: None,
            n_points: 200_001,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !(self.bisection_tol > 0.0) {
            return Err(Error::Config(format!("bisection_tol must be positive, got {}", self.bisection_tol)));
        }
        if !(self.defect_tol > 0.0) {
            return Err(Error::Config(format!("defect_tol must be positive, got {}", self.defect_tol)));
        }
        if let Some((lo, hi)) = self.energy_bracket {
            if !(lo < hi && hi < 0.0) {
                return Err(Error::Config(format!(
                    "energy bracket must satisfy E_lo < E_hi < 0, got [{lo}, {hi}]"
                )));
            }
        }
        if let MatchPolicy::FixedFraction(f) = self.match_policy {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::Config(format!("match fraction must lie in (0, 1), got {f}")));
            }
        }
        Ok(())
    }
}

/// Converged (or flagged) eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenResult {
    /// Energy in Ry.
    pub energy: f64,
    pub nodes: usize,
    pub node_target: usize,
    pub ell: u32,
    pub converged: bool,
    /// `u(ρ_m)² [u'_L/u_L − u'_R/u_R] / ∫u²`, which is close to `E* − E` in Ry.
    pub match_defect: f64,
    pub match_rho: f64,
    pub bisections: usize,
    pub grid: RadialGrid,
}

/// Samples of the reduced radial function `u(ρ)` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction {
    pub grid: RadialGrid,
    pub u: Vec<f64>,
}

/// Runs the Numerov recurrence for `u'' + g(ρ) u = 0` over a whole grid.
///
/// `(u0, u1)` are the values at the first two points in sweep direction.
/// Values are rescaled in place whenever they exceed [`RENORM_THRESHOLD`].
pub fn numerov_sweep(
    geff: impl Fn(f64) -> f64,
    grid: &RadialGrid,
    u0: f64,
    u1: f64,
    direction: Direction,
) -> Result<Vec<f64>> {
    let h = grid.step();
    let n = grid.n_points;
    let mut g = Vec::with_capacity(n);
    for k in 0..n {
        let rho = grid.point(k);
        let value = geff(rho);
        if !value.is_finite() {
            return Err(Error::Domain {
                context: "non-finite g(rho) in numerov_sweep",
                value: rho,
            });
        }
        g.push(value);
    }
    let mut u = vec![0.0; n];
    match direction {
        Direction::Outward => {
            u[0] = u0;
            u[1] = u1;
            recur_outward(&g, h * h, &mut u, 0, n - 1);
        }
        Direction::Inward => {
            u[n - 1] = u0;
            u[n - 2] = u1;
            recur_inward(&g, h * h, &mut u, n - 1, 0);
        }
    }
    Ok(u)
}

// Summed Numerov form for u'' = −g u: with w = (1 + h²g/12) u the increment
// w_{k+1} − w_k is carried forward, so rounding errors scale with the
// increment instead of with u.
struct Summed {
    h2: f64,
    w: f64,
    step: f64,
}

impl Summed {
    fn factor(&self, g: f64) -> f64 {
        1.0 + self.h2 / 12.0 * g
    }

    fn new(h2: f64, g0: f64, u0: f64, g1: f64, u1: f64) -> Self {
        let mut s = Summed { h2, w: 0.0, step: 0.0 };
        s.w = s.factor(g1) * u1;
        s.step = s.w - s.factor(g0) * u0;
        s
    }

    // Advances from the current point (value u, coefficient g) to the next.
    fn advance(&mut self, g: f64, u: f64, g_next: f64) -> f64 {
        self.step -= self.h2 * g * u;
        self.w += self.step;
        self.w / self.factor(g_next)
    }

    fn rescale(&mut self, by: f64) {
        self.w /= by;
        self.step /= by;
    }
}

// u[from], u[from+1] given; fills through u[to].
fn recur_outward(g: &[f64], h2: f64, u: &mut [f64], from: usize, to: usize) {
    let mut s = Summed::new(h2, g[from], u[from], g[from + 1], u[from + 1]);
    for k in from + 1..to {
        let next = s.advance(g[k], u[k], g[k + 1]);
        u[k + 1] = next;
        if next.abs() > RENORM_THRESHOLD {
            u[from..=k + 1].iter_mut().for_each(|v| *v /= RENORM_THRESHOLD);
            s.rescale(RENORM_THRESHOLD);
        }
    }
}

// u[from], u[from-1] given; fills down through u[to].
fn recur_inward(g: &[f64], h2: f64, u: &mut [f64], from: usize, to: usize) {
    let mut s = Summed::new(h2, g[from], u[from], g[from - 1], u[from - 1]);
    for k in (to + 1..from).rev() {
        let next = s.advance(g[k], u[k], g[k - 1]);
        u[k - 1] = next;
        if next.abs() > RENORM_THRESHOLD {
            u[k - 1..=from].iter_mut().for_each(|v| *v /= RENORM_THRESHOLD);
            s.rescale(RENORM_THRESHOLD);
        }
    }
}

/// Number of sign changes over the interior samples; zeros are skipped, so a
/// crossing through an exact zero counts once.
pub fn count_nodes(u: &[f64]) -> usize {
    if u.len() < 3 {
        return 0;
    }
    let mut nodes = 0;
    let mut last = 0.0_f64;
    for &v in &u[1..u.len() - 1] {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    nodes
}

/// Log-variable path from near the origin, uniform in `x = ln ρ`.
///
/// The step is chosen so that every requested end point lands exactly on a
/// path node; the two start values of the uniform sweep then come out of the
/// same recurrence and their ratio carries no independent path error.
struct InnerPath {
    dx: f64,
    x0: f64,
    x_ref: f64,
    rho2: Vec<f64>,
    rho2_v: Vec<f64>,
    /// Path indices of the requested points.
    marks: Vec<usize>,
}

impl InnerPath {
    /// Path from `x0` through `rho_first`, then `rho_second` if given.
    fn new(
        problem: &EffectivePotentialParams,
        x0: f64,
        x_ref: f64,
        rho_first: f64,
        rho_second: Option<f64>,
    ) -> Result<Self> {
        let x_first = rho_first.ln();
        let (dx, before, after) = match rho_second {
            Some(r) => {
                let gap = r.ln() - x_first;
                let sub = (gap / INNER_DX).ceil().max(1.0) as usize;
                let dx = gap / sub as f64;
                (dx, ((x_first - x0) / dx).ceil().max(2.0) as usize, sub)
            }
            None => {
                let steps = ((x_first - x0) / INNER_DX).ceil().max(2.0) as usize;
                ((x_first - x0) / steps as f64, steps, 0)
            }
        };
        let x0 = x_first - before as f64 * dx;
        let total = before + after;
        let mut rho2 = Vec::with_capacity(total + 1);
        let mut rho2_v = Vec::with_capacity(total + 1);
        for j in 0..=total {
            let rho = match (j, rho_second) {
                (j, _) if j == before => rho_first,
                (j, Some(r)) if j == total => r,
                _ => (x_first + (j as f64 - before as f64) * dx).exp(),
            };
            let r2 = rho * rho;
            rho2.push(r2);
            rho2_v.push(r2 * problem.interaction(rho)?);
        }
        let mut marks = vec![before];
        if rho_second.is_some() {
            marks.push(total);
        }
        Ok(InnerPath {
            dx,
            x0,
            x_ref,
            rho2,
            rho2_v,
            marks,
        })
    }

    // y'' = [ν² + ρ²(V − ε)] y in x = ln ρ, with u = e^{(x − x_ref)/2} y.
    // Summed form: w = f y, w_{j+1} − w_j accumulated, so that rounding
    // errors stay relative to the increment rather than to y.
    fn solve(&self, energy: f64, nu: f64) -> [f64; 2] {
        let dx2 = self.dx * self.dx;
        let nu2 = nu * nu;
        let q = |j: usize| nu2 + self.rho2_v[j] - self.rho2[j] * energy;
        let f = |j: usize| 1.0 - dx2 / 12.0 * q(j);
        let last = *self.marks.last().unwrap_or(&0);
        let mut out = [0.0; 2];
        let y0 = (nu * (self.x0 - self.x_ref)).exp();
        let y1 = (nu * (self.x0 + self.dx - self.x_ref)).exp();
        let mut w = f(1) * y1;
        let mut step = w - f(0) * y0;
        let mut y = y1;
        let mut scale = 0.0_f64;
        let record = |j: usize, y: f64, scale: f64, out: &mut [f64; 2]| {
            for (slot, &mark) in out.iter_mut().zip(&self.marks) {
                if mark == j {
                    let x = self.x0 + j as f64 * self.dx;
                    *slot = y * (0.5 * (x - self.x_ref) + scale).exp();
                }
            }
        };
        record(1, y, scale, &mut out);
        for j in 1..last {
            step += dx2 * q(j) * y;
            w += step;
            y = w / f(j + 1);
            if y.abs() > RENORM_THRESHOLD {
                y /= RENORM_THRESHOLD;
                w /= RENORM_THRESHOLD;
                step /= RENORM_THRESHOLD;
                scale += RENORM_THRESHOLD.ln();
            }
            record(j + 1, y, scale, &mut out);
        }
        out
    }
}

/// Per-problem, energy-independent data for repeated shooting.
pub(crate) struct Shooter<'a> {
    problem: &'a EffectivePotentialParams,
    grid: RadialGrid,
    h: f64,
    u_eff: Vec<f64>,
    join: usize,
    nu: f64,
    x0: f64,
    x_ref: f64,
    seeds: InnerPath,
}

impl<'a> Shooter<'a> {
    pub(crate) fn new(problem: &'a EffectivePotentialParams, grid: RadialGrid) -> Result<Self> {
        let join = grid.join_index();
        if join + 4 >= grid.n_points {
            return Err(Error::Config("grid too small for the inner start".into()));
        }
        let rho: Vec<f64> = grid.points();
        let u_eff = crate::exec::try_map(&rho, |&r| problem.effective_potential(r))?;
        let nu = problem.langer_index();
        let x_ref = grid.point(join).ln();
        let mut span = INNER_SPAN.max(x_ref - grid.rho_min.ln() + 4.6);
        if nu > 0.0 {
            span = span.min(600.0 / nu);
        }
        let x0 = x_ref - span;
        let seeds = InnerPath::new(problem, x0, x_ref, grid.point(join), Some(grid.point(join + 1)))?;
        Ok(Shooter {
            problem,
            grid,
            h: grid.step(),
            u_eff,
            join,
            nu,
            x0: seeds.x0,
            x_ref,
            seeds,
        })
    }

    fn n(&self) -> usize {
        self.grid.n_points
    }

    fn local_k2(&self, energy: f64) -> Vec<f64> {
        self.u_eff.iter().map(|&v| energy - v).collect()
    }

    fn start_values(&self, energy: f64) -> (f64, f64) {
        let [u0, u1] = self.seeds.solve(energy, self.nu);
        (u0, u1)
    }

    /// Node count of the regular solution swept over the whole grid.
    pub(crate) fn outward_nodes(&self, energy: f64) -> usize {
        let g = |k: usize| energy - self.u_eff[k];
        let (u0, mut u) = self.start_values(energy);
        let mut s = Summed::new(self.h * self.h, g(self.join), u0, g(self.join + 1), u);
        let mut nodes = 0;
        let mut last = if u0 != 0.0 { u0 } else { u };
        let n = self.n();
        for k in self.join + 1..n - 1 {
            if u != 0.0 {
                if last != 0.0 && (u > 0.0) != (last > 0.0) {
                    nodes += 1;
                }
                last = u;
            }
            u = s.advance(g(k), u, g(k + 1));
            if u.abs() > RENORM_THRESHOLD {
                u /= RENORM_THRESHOLD;
                last /= RENORM_THRESHOLD;
                s.rescale(RENORM_THRESHOLD);
            }
        }
        nodes
    }

    pub(crate) fn match_index(&self, energy: f64, policy: MatchPolicy) -> usize {
        let n = self.n();
        let lo = self.join + 1;
        let hi = n - 2;
        let mid = n / 2;
        let m = match policy {
            MatchPolicy::FixedFraction(frac) => (frac * (n - 1) as f64).round() as usize,
            MatchPolicy::OuterTurningPoint => (lo + 1..hi)
                .rev()
                .find(|&k| energy - self.u_eff[k] > 0.0)
                .filter(|&k| k > lo + 1)
                .unwrap_or(mid),
        };
        m.clamp(lo, hi)
    }

    /// Outward sweep through `m + 1` and inward sweep down to `m − 1`.
    fn sweeps(&self, energy: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.n();
        let g = self.local_k2(energy);
        let h2 = self.h * self.h;
        let mut left = vec![0.0; m + 2];
        let (u0, u1) = self.start_values(energy);
        left[self.join] = u0;
        left[self.join + 1] = u1;
        recur_outward(&g, h2, &mut left, self.join, m + 1);

        let mut right = vec![0.0; n];
        let tail = energy_tail_ratio(energy, self.u_eff[n - 1], self.h);
        right[n - 1] = 1.0;
        right[n - 2] = tail;
        recur_inward(&g, h2, &mut right, n - 1, m - 1);
        (left, right)
    }

    pub(crate) fn defect(&self, energy: f64, m: usize) -> Result<f64> {
        let (left, right) = self.sweeps(energy, m);
        matched_defect(&left, &right, m, self.join, self.h)
    }

    /// Matched, normalized wavefunction at `energy`.
    pub(crate) fn wavefunction(&self, energy: f64, m: usize) -> Result<WaveFunction> {
        let (left, right) = self.sweeps(energy, m);
        let window = m - 1..=m + 1;
        let num: f64 = window.clone().map(|k| left[k] * right[k]).sum();
        let den: f64 = window.map(|k| right[k] * right[k]).sum();
        if den == 0.0 || num == 0.0 {
            return Err(Error::DegenerateSeed(m));
        }
        let scale = num / den;
        let mut u = vec![0.0; self.n()];
        u[self.join..=m].copy_from_slice(&left[self.join..=m]);
        for k in m + 1..self.n() {
            u[k] = scale * right[k];
        }
        for (k, slot) in u.iter_mut().enumerate().take(self.join) {
            *slot = self.inner_value(energy, self.grid.point(k))?;
        }
        normalize(&WaveFunction { grid: self.grid, u })
    }

    fn inner_value(&self, energy: f64, rho: f64) -> Result<f64> {
        let x = rho.ln();
        if x - self.x0 < 4.0 * INNER_DX {
            // below the start of the log path: leading power law
            return Ok(((self.nu + 0.5) * (x - self.x_ref)).exp());
        }
        Ok(InnerPath::new(self.problem, self.x0, self.x_ref, rho, None)?.solve(energy, self.nu)[0])
    }
}

fn energy_tail_ratio(energy: f64, u_end: f64, h: f64) -> f64 {
    let kappa2 = u_end - energy;
    if kappa2 > 0.0 {
        (kappa2.sqrt() * h).exp()
    } else {
        1.0 + h
    }
}

fn matched_defect(left: &[f64], right: &[f64], m: usize, join: usize, h: f64) -> Result<f64> {
    let ul = left[m];
    let ur = right[m];
    if ul == 0.0 && ur == 0.0 {
        return Err(Error::DegenerateSeed(m));
    }
    let dl = (left[m + 1] - left[m - 1]) / (2.0 * h);
    let dr = (right[m + 1] - right[m - 1]) / (2.0 * h);
    let norm_l: f64 = left[join..=m].iter().map(|v| v * v).sum::<f64>() * h;
    let norm_r: f64 = right[m..].iter().map(|v| v * v).sum::<f64>() * h;
    let wronskian = dl * ur - dr * ul;
    let den = norm_l * ur * ur + norm_r * ul * ul;
    if den == 0.0 || !den.is_finite() {
        return Err(Error::DegenerateSeed(m));
    }
    Ok(ul * ur * wronskian / den)
}

/// Normalized log-derivative mismatch of the outward and inward sweeps at `match_index`.
///
/// Equals `u(ρ_m)² [u'_L/u_L − u'_R/u_R] / ∫u²` for the matched function,
/// which is continuous in `E` near an eigenvalue and changes sign there.
pub fn match_defect(
    energy: f64,
    problem: &EffectivePotentialParams,
    grid: &RadialGrid,
    match_index: usize,
) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(Error::Domain {
            context: "match_defect needs a bound-state energy E < 0",
            value: energy,
        });
    }
    let shooter = Shooter::new(problem, *grid)?;
    if match_index <= shooter.join || match_index + 1 >= grid.n_points {
        return Err(Error::Config(format!(
            "match index {match_index} must lie strictly inside ({}, {})",
            shooter.join,
            grid.n_points - 1
        )));
    }
    shooter.defect(energy, match_index)
}

fn default_bracket(problem: &EffectivePotentialParams, node_target: usize, tol: f64) -> (f64, f64) {
    match closed_form_energy(problem, node_target as u32) {
        Some(e) => (1.5 * e, -tol),
        None => (-50.0, -1e-4),
    }
}

/// Finds the bound state with `node_target` nodes.
///
/// Returns `Ok` with `converged == false` when the bisection budget runs
/// out; returns an error when no state with that node count is bracketed.
pub fn solve_state(
    problem: &EffectivePotentialParams,
    node_target: usize,
    config: &SolverConfig,
) -> Result<(EigenResult, WaveFunction)> {
    config.validate()?;
    let grid = match config.rho_max {
        Some(rho_max) => RadialGrid::new(config.rho_min, rho_max, config.n_points)?,
        None => auto_grid(problem, node_target, config)?,
    };
    solve_on_grid(problem, node_target, config, grid)
}

/// [`solve_state`] on an explicit grid.
pub fn solve_on_grid(
    problem: &EffectivePotentialParams,
    node_target: usize,
    config: &SolverConfig,
    grid: RadialGrid,
) -> Result<(EigenResult, WaveFunction)> {
    config.validate()?;
    let shooter = Shooter::new(problem, grid)?;
    let (mut lo, mut hi) = node_bracket(&shooter, problem, node_target, config)?;

    let m = shooter.match_index(hi, config.match_policy);
    let mut d_lo = shooter.defect(lo, m)?;
    let mut d_hi = shooter.defect(hi, m)?;
    let mut widen = 0;
    while d_lo.signum() == d_hi.signum() && widen < 8 {
        let w = hi - lo;
        lo -= w;
        hi = (hi + w).min(0.5 * hi);
        d_lo = shooter.defect(lo, m)?;
        d_hi = shooter.defect(hi, m)?;
        widen += 1;
    }

    let mut bisections = 0;
    if d_lo.signum() != d_hi.signum() {
        while hi - lo > config.bisection_tol && bisections < config.max_bisections {
            let mid = 0.5 * (lo + hi);
            let d = shooter.defect(mid, m)?;
            if d == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if d.signum() == d_lo.signum() {
                lo = mid;
                d_lo = d;
            } else {
                hi = mid;
            }
            bisections += 1;
        }
    }

    let energy = 0.5 * (lo + hi);
    let defect = shooter.defect(energy, m)?;
    let wf = shooter.wavefunction(energy, m)?;
    let nodes = count_nodes(&wf.u);
    let converged = hi - lo <= config.bisection_tol && defect.abs() <= config.defect_tol && nodes == node_target;
    let result = EigenResult {
        energy,
        nodes,
        node_target,
        ell: problem.ell,
        converged,
        match_defect: defect,
        match_rho: grid.point(m),
        bisections,
        grid,
    };
    Ok((result, wf))
}

/// Stage one: isolate the transition of the outward node count from
/// `node_target` to `node_target + 1`.
fn node_bracket(
    shooter: &Shooter<'_>,
    problem: &EffectivePotentialParams,
    node_target: usize,
    config: &SolverConfig,
) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = config
        .energy_bracket
        .unwrap_or_else(|| default_bracket(problem, node_target, config.bisection_tol));
    let widenings = if config.energy_bracket.is_none() && problem.potential.kind.is_chern_simons() {
        3
    } else {
        0
    };
    let mut scan = Vec::new();
    let mut attempt = 0;
    loop {
        let n_lo = shooter.outward_nodes(lo);
        let n_hi = shooter.outward_nodes(hi);
        scan.push((lo, n_lo));
        scan.push((hi, n_hi));
        if n_lo <= node_target && n_hi > node_target {
            break;
        }
        if attempt == widenings {
            return Err(Error::NotBracketed { node_target, scan });
        }
        attempt += 1;
        lo *= 2.0;
        hi *= 0.5;
    }

    let target_width = |hi: f64| (1e-7 * hi.abs()).max(10.0 * config.bisection_tol);
    while hi - lo > target_width(hi) {
        let mid = 0.5 * (lo + hi);
        if shooter.outward_nodes(mid) <= node_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Picks `ρ_max` so the state's tail decays through [`TAIL_EFOLDS`] e-foldings
/// beyond its outer turning point.
pub fn auto_grid(problem: &EffectivePotentialParams, node_target: usize, config: &SolverConfig) -> Result<RadialGrid> {
    let rho_max = match closed_form_energy(problem, node_target as u32) {
        Some(e) => tail_extent(problem, e)?.max(40.0 / problem.atom.sqrt_zeta),
        None => estimate_extent(problem, node_target, config)?,
    };
    RadialGrid::new(config.rho_min, rho_max.max(10.0 * config.rho_min), config.n_points)
}

fn estimate_extent(problem: &EffectivePotentialParams, node_target: usize, config: &SolverConfig) -> Result<f64> {
    let coarse = SolverConfig {
        bisection_tol: 1e-6,
        defect_tol: 1e-3,
        n_points: 20_001,
        ..*config
    };
    let mut box_size = 60.0_f64;
    let mut last_err = None;
    for _ in 0..10 {
        let grid = RadialGrid::new(config.rho_min, box_size, coarse.n_points)?;
        match solve_on_grid(problem, node_target, &coarse, grid) {
            Ok((res, _)) => {
                let needed = tail_extent(problem, res.energy)?;
                if needed <= box_size {
                    return Ok(needed);
                }
                box_size = 1.2 * needed;
            }
            Err(e @ Error::NotBracketed { .. }) => {
                last_err = Some(e);
                box_size *= 4.0;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Config("could not size the radial grid".into())))
}

/// Radius at which the WKB decay `∫κ dρ` beyond the outer turning point reaches [`TAIL_EFOLDS`].
pub fn tail_extent(problem: &EffectivePotentialParams, energy: f64) -> Result<f64> {
    if !(energy < 0.0) {
        return Err(Error::Domain {
            context: "tail_extent needs E < 0",
            value: energy,
        });
    }
    let length = 1.0 / (-energy).sqrt();
    // outermost classically allowed radius on a geometric scan
    let mut rho = 1e-6 * length;
    let mut turning = rho;
    while rho < 1e4 * length {
        if energy - problem.effective_potential(rho)? > 0.0 {
            turning = rho;
        }
        rho *= 1.01;
    }
    let mut rho = turning;
    let mut efolds = 0.0;
    while efolds < TAIL_EFOLDS {
        let kappa = (problem.effective_potential(rho)? - energy).max(0.0).sqrt();
        let step = (0.05 / kappa.max(1e-300)).clamp(1e-3 * length, 0.05 * length);
        efolds += kappa * step;
        rho += step;
        if rho > 1e7 * length {
            break;
        }
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_atom, Atom, AtomSpec, PotentialSpec};

    fn hydrogen(kind: crate::model::PotentialKind, ell: u32) -> EffectivePotentialParams {
        let spec = crate::model::PotentialSpec::new(kind, None).unwrap();
        EffectivePotentialParams::new(spec, AtomSpec::from_masses(2.0, 2.0).unwrap(), ell)
    }

    #[test]
    fn sweep_reproduces_growing_exponential() {
        let grid = RadialGrid::new(0.1, 5.0, 1001).unwrap();
        let h = grid.step();
        let u = numerov_sweep(|_| -1.0, &grid, 0.1f64.exp(), (0.1 + h).exp(), Direction::Outward).unwrap();
        for (k, v) in u.iter().enumerate() {
            let exact = grid.point(k).exp();
            assert!(((v - exact) / exact).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_reproduces_sine() {
        let grid = RadialGrid::new(1e-6, 10.0, 2001).unwrap();
        let h = grid.step();
        let u = numerov_sweep(|_| 1.0, &grid, (1e-6f64).sin(), (1e-6 + h).sin(), Direction::Outward).unwrap();
        for (k, v) in u.iter().enumerate() {
            assert!((v - grid.point(k).sin()).abs() < 1e-9);
        }
        assert_eq!(count_nodes(&u), 3);
    }

    #[test]
    fn sweep_inward_matches_outward_decay() {
        let grid = RadialGrid::new(0.0 + 1e-3, 5.0, 1001).unwrap();
        let h = grid.step();
        let end = grid.point(grid.n_points - 1);
        let u = numerov_sweep(|_| -1.0, &grid, (-end).exp(), (-(end - h)).exp(), Direction::Inward).unwrap();
        for (k, v) in u.iter().enumerate() {
            let exact = (-grid.point(k)).exp();
            assert!(((v - exact) / exact).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_hydrogen_ground_state_shape() {
        let p = hydrogen(crate::model::PotentialKind::Coulomb3d, 0);
        let grid = RadialGrid::new(1e-6, 20.0, 20001).unwrap();
        let exact = |r: f64| r * (-r).exp();
        let u = numerov_sweep(
            |r| -1.0 - p.effective_potential(r).unwrap(),
            &grid,
            exact(grid.point(0)),
            exact(grid.point(1)),
            Direction::Outward,
        )
        .unwrap();
        for k in (1000..6000).step_by(250) {
            let r = grid.point(k);
            assert!(((u[k] - exact(r)) / exact(r)).abs() < 1e-7, "rho = {r}");
        }
    }

    #[test]
    fn sweep_rejects_non_finite_g() {
        let grid = RadialGrid::new(1e-3, 1.0, 1000).unwrap();
        assert!(numerov_sweep(|r| if r > 0.5 { f64::NAN } else { 0.0 }, &grid, 0.0, 1e-3, Direction::Outward).is_err());
    }

    #[test]
    fn sweep_rescales_instead_of_overflowing() {
        let grid = RadialGrid::new(1e-3, 1000.0, 10001).unwrap();
        let u = numerov_sweep(|_| -1.0, &grid, 1.0, 1.1, Direction::Outward).unwrap();
        assert!(u.iter().all(|v| v.is_finite()));
        assert!(u[u.len() - 1] > 0.0);
    }

    #[test]
    fn node_counting() {
        let grid = RadialGrid::new(1e-6, 30.0, 3001).unwrap();
        let ground: Vec<f64> = grid.points().iter().map(|r| r * (-r).exp()).collect();
        assert_eq!(count_nodes(&ground), 0);
        let excited: Vec<f64> = grid.points().iter().map(|r| r * (1.0 - r / 2.0) * (-r / 2.0).exp()).collect();
        assert_eq!(count_nodes(&excited), 1);
        assert_eq!(count_nodes(&[1.0, 1.0, 0.0, -1.0, 0.0, 1.0, 2.0]), 2);
        assert_eq!(count_nodes(&[-1.0, 1.0, 1.0, 1.0, -1.0]), 0);
        assert_eq!(count_nodes(&[1.0, 0.0, 1.0]), 0);
        assert_eq!(count_nodes(&[]), 0);
    }

    #[test]
    fn defect_vanishes_at_hydrogen_levels() {
        let p3 = hydrogen(crate::model::PotentialKind::Coulomb3d, 0);
        let grid = RadialGrid::new(1e-6, 40.0, 40001).unwrap();
        let m = 2000; // ρ = 2, the turning point of the ground state
        assert!(match_defect(-1.0, &p3, &grid, m).unwrap().abs() < 1e-8);
        assert!(match_defect(-1.21, &p3, &grid, m).unwrap().abs() > 1e-3);

        let p2 = hydrogen(crate::model::PotentialKind::Coulomb2d, 0);
        let grid = RadialGrid::new(1e-6, 12.0, 60001).unwrap();
        assert!(match_defect(-4.0, &p2, &grid, 2500).unwrap().abs() < 1e-7);
        assert!(match_defect(-3.0, &p2, &grid, 2500).unwrap().abs() > 1e-3);
    }

    #[test]
    fn defect_rejects_bad_inputs() {
        let p3 = hydrogen(crate::model::PotentialKind::Coulomb3d, 0);
        let grid = RadialGrid::new(1e-6, 40.0, 4001).unwrap();
        assert!(match_defect(0.5, &p3, &grid, 100).is_err());
        assert!(match_defect(-1.0, &p3, &grid, 1).is_err());
        assert!(match_defect(-1.0, &p3, &grid, 4000).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(RadialGrid::new(0.0, 1.0, 2000).is_err());
        assert!(RadialGrid::new(1.0, 1.0, 2000).is_err());
        assert!(RadialGrid::new(1e-6, 1.0, 999).is_err());
        let g = RadialGrid::new(1e-6, 1.0, 1001).unwrap();
        assert!((g.point(1000) - 1.0).abs() < 1e-15);
        assert_eq!(g.refined().n_points, 2001);
        assert!((g.refined().step() * 2.0 - g.step()).abs() < 1e-18);
    }

    #[test]
    fn config_validation() {
        let mut c = SolverConfig {
            energy_bracket: Some((-1.0, 0.5)),
            ..SolverConfig::default()
        };
        assert!(c.validate().is_err());
        c.energy_bracket = Some((-1.0, -2.0));
        assert!(c.validate().is_err());
        c.energy_bracket = None;
        c.bisection_tol = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn hydrogen_ground_state_solves() {
        let atom = make_atom(Atom::Pe);
        let p = EffectivePotentialParams::new(PotentialSpec::coulomb3d(), atom, 0);
        let (res, wf) = solve_state(&p, 0, &SolverConfig::default()).unwrap();
        assert!(res.converged);
        assert_eq!(res.nodes, 0);
        assert!(((res.energy + atom.zeta) / atom.zeta).abs() < 1e-6, "{}", res.energy);
        assert_eq!(wf.u.len(), res.grid.n_points);
    }

    #[test]
    fn unbracketed_state_is_an_error() {
        let p = hydrogen(crate::model::PotentialKind::Coulomb3d, 0);
        let config = SolverConfig {
            energy_bracket: Some((-0.9, -0.5)),
            rho_max: Some(40.0),
            n_points: 4001,
            ..SolverConfig::default()
        };
        match solve_state(&p, 0, &config) {
            Err(Error::NotBracketed { node_target, scan }) => {
                assert_eq!(node_target, 0);
                assert!(!scan.is_empty());
            }
            other => panic!("expected NotBracketed, got {other:?}"),
        }
    }

    #[test]
    fn bisection_budget_exhaustion_is_flagged() {
        let p = hydrogen(crate::model::PotentialKind::Coulomb3d, 0);
        let config = SolverConfig {
            max_bisections: 2,
            rho_max: Some(40.0),
            n_points: 4001,
            ..SolverConfig::default()
        };
        let (res, _) = solve_state(&p, 0, &config).unwrap();
        assert!(!res.converged);
        assert!(res.bisections <= 2);
    }
}
