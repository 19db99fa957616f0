//! Single-state subcommands.

use planar_atom::model::{closed_form_energy, lambda_from_ev};
use planar_atom::specfun::bessel_k0_eval;
use planar_atom::{mean_radius, solve_state, EffectivePotentialParams, EigenResult, PotentialSpec, SolverConfig, WaveFunction};

use crate::args::{GlobalOpts, ScanArgs, SolveArgs, StateArgs, WavefunctionArgs};
use crate::error::{CliError, Result, EXIT_NUMERICAL};
use crate::format::{emit, Document, Format, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn solver_config(global: &GlobalOpts) -> Result<SolverConfig> {
    let mut config = SolverConfig::default();
    if let Some(r) = global.rho_min {
        if !(r > 0.0 && r.is_finite()) {
            return Err(CliError::Usage(format!("--rho-min must be positive, got {r}")));
        }
        config.rho_min = r;
    }
    if let Some(r) = global.rho_max {
        if !(r > config.rho_min && r.is_finite()) {
            return Err(CliError::Usage(format!("--rho-max must exceed --rho-min ({}), got {r}", config.rho_min)));
        }
        config.rho_max = Some(r);
    }
    if let Some(n) = global.points {
        if n < planar_atom::RadialGrid::MIN_POINTS {
            return Err(CliError::Usage(format!(
                "--points must be at least {}, got {n}",
                planar_atom::RadialGrid::MIN_POINTS
            )));
        }
        config.n_points = n;
    }
    if let Some(t) = global.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
        config.bisection_tol = t;
    }
    Ok(config)
}

pub fn potential_spec(state: &StateArgs) -> Result<PotentialSpec> {
    let lambda = match (state.lambda, state.mgamma_ev) {
        (Some(l), _) => Some(l),
        (None, Some(ev)) => Some(lambda_from_ev(ev)),
        (None, None) => None,
    };
    match (state.potential.is_chern_simons(), lambda) {
        (true, None) => Err(CliError::Usage(format!(
            "--lambda or --mgamma-ev is required for --potential {}",
            state.potential
        ))),
        (false, Some(_)) => Err(CliError::Usage(format!(
            "--lambda/--mgamma-ev only apply to chern-simons potentials, not --potential {}",
            state.potential
        ))),
        (true, Some(l)) if !(l > 0.0 && l.is_finite()) => {
            Err(CliError::Usage(format!("--lambda must be positive, got {l}")))
        }
        _ => Ok(PotentialSpec::new(state.potential, lambda)?),
    }
}

pub fn problem(state: &StateArgs) -> Result<EffectivePotentialParams> {
    Ok(EffectivePotentialParams::new(
        potential_spec(state)?,
        planar_atom::make_atom(state.atom),
        state.ell,
    ))
}

pub fn lambda_value(p: &EffectivePotentialParams) -> Value {
    Value::opt(p.potential.lambda)
}

const SOLVE_COLUMNS: [&str; 16] = [
    "atom",
    "zeta",
    "potential",
    "lambda",
    "ell",
    "nodes",
    "energy_ry",
    "converged",
    "closed_form_ry",
    "mean_r_bohr",
    "match_defect",
    "match_rho",
    "bisections",
    "rho_min",
    "rho_max",
    "n_points",
];

fn solve_row(p: &EffectivePotentialParams, r: &EigenResult, wf: &WaveFunction) -> Vec<Value> {
    let radius = mean_radius(wf, p).ok().map(|m| m.mean_r_bohr);
    vec![
        p.atom.label().into(),
        p.atom.zeta.into(),
        p.potential.kind.token().into(),
        lambda_value(p),
        p.ell.into(),
        r.nodes.into(),
        r.energy.into(),
        r.converged.into(),
        Value::opt(closed_form_energy(p, r.node_target as u32)),
        Value::opt(radius),
        r.match_defect.into(),
        r.match_rho.into(),
        r.bisections.into(),
        r.grid.rho_min.into(),
        r.grid.rho_max.into(),
        r.grid.n_points.into(),
    ]
}

fn status(converged: bool) -> i32 {
    if converged {
        0
    } else {
        EXIT_NUMERICAL
    }
}

pub fn solve(global: &GlobalOpts, args: &SolveArgs) -> Result<i32> {
    let p = problem(&args.state)?;
    let config = solver_config(global)?;
    let (r, wf) = solve_state(&p, args.nodes, &config)?;
    let mut doc = Document::new("solve", &SOLVE_COLUMNS)
        .meta("version", VERSION)
        .meta("tol", config.bisection_tol);
    doc.push(solve_row(&p, &r, &wf));
    emit(&doc.render(global.format), global.output.as_deref())?;
    if let Some(path) = &args.wavefunction {
        let text = wavefunction_doc(&p, &r, &wf, 1).render(Format::Csv);
        emit(&text, Some(path))?;
    }
    Ok(status(r.converged))
}

fn wavefunction_doc(p: &EffectivePotentialParams, r: &EigenResult, wf: &WaveFunction, stride: usize) -> Document {
    let mut doc = Document::new("wavefunction", &["rho", "r_bohr", "u"])
        .meta("version", VERSION)
        .meta("atom", p.atom.label())
        .meta("potential", p.potential.kind.token())
        .meta("lambda", lambda_value(p))
        .meta("ell", p.ell)
        .meta("nodes", r.nodes)
        .meta("energy_ry", r.energy)
        .meta("converged", r.converged)
        .meta("stride", stride);
    for (k, &u) in wf.u.iter().enumerate().step_by(stride) {
        let rho = wf.grid.point(k);
        doc.push(vec![rho.into(), (rho / p.atom.sqrt_zeta).into(), u.into()]);
    }
    doc
}

pub fn wavefunction(global: &GlobalOpts, args: &WavefunctionArgs) -> Result<i32> {
    let p = problem(&args.state)?;
    let config = solver_config(global)?;
    let (r, wf) = solve_state(&p, args.nodes, &config)?;
    let doc = wavefunction_doc(&p, &r, &wf, args.stride as usize);
    emit(&doc.render(global.format), global.output.as_deref())?;
    Ok(status(r.converged))
}

pub fn scan_potential(global: &GlobalOpts, args: &ScanArgs) -> Result<i32> {
    if !(args.from > 0.0 && args.to > args.from && args.to.is_finite()) {
        return Err(CliError::Usage(format!(
            "need 0 < --from < --to, got --from {} --to {}",
            args.from, args.to
        )));
    }
    if args.samples < 2 {
        return Err(CliError::Usage(format!("--samples must be at least 2, got {}", args.samples)));
    }
    let p = problem(&args.state)?;
    let step = (args.to - args.from) / (args.samples - 1) as f64;
    let mut doc = Document::new("scan-potential", &["rho", "u_eff", "centrifugal"])
        .meta("version", VERSION)
        .meta("atom", p.atom.label())
        .meta("potential", p.potential.kind.token())
        .meta("lambda", lambda_value(&p))
        .meta("ell", p.ell);
    let c = p.centrifugal_coefficient();
    for k in 0..args.samples {
        let rho = args.from + k as f64 * step;
        doc.push(vec![rho.into(), p.effective_potential(rho)?.into(), (c / (rho * rho)).into()]);
    }
    emit(&doc.render(global.format), global.output.as_deref())?;
    Ok(0)
}

pub fn k0(global: &GlobalOpts, x: f64) -> Result<i32> {
    let eval = bessel_k0_eval(x)?;
    let mut doc = Document::new("k0", &["x", "value", "regime", "underflow"]).meta("version", VERSION);
    doc.push(vec![eval.x.into(), eval.value.into(), eval.regime.as_str().into(), eval.underflow.into()]);
    emit(&doc.render(global.format), global.output.as_deref())?;
    Ok(0)
}
