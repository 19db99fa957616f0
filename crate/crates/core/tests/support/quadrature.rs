//! Test-only reference values for the Bessel functions.
//!
//! `K₀` comes from the integral representation `∫₀^∞ exp(-x cosh t) dt`
//! evaluated by adaptive Gauss–Legendre quadrature; `I₀` from its power
//! series with compensated summation. Neither shares code with the library.

#![allow(dead_code)]

/// Neumaier compensated sum.
#[derive(Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 1..=n {
        let mut z = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = z;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        rule.push((z, 2.0 / ((1.0 - z * z) * dp * dp)));
    }
    rule
}

fn panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = CompensatedSum::default();
    for &(z, w) in rule {
        acc.add(w * f(mid + half * z));
    }
    half * acc.value()
}

/// Adaptive bisection with a 20-point Gauss–Legendre panel rule.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let rule = gauss_legendre(20);
    let whole = panel(f, a, b, &rule);
    let mut acc = CompensatedSum::default();
    refine(f, a, b, whole, rel_tol * whole.abs().max(f64::MIN_POSITIVE), &rule, 0, &mut acc);
    acc.value()
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    abs_tol: f64,
    rule: &[(f64, f64)],
    depth: usize,
    acc: &mut CompensatedSum,
) {
    let mid = 0.5 * (a + b);
    let left = panel(f, a, mid, rule);
    let right = panel(f, mid, b, rule);
    let both = left + right;
    // the rounding floor of a panel pair ends refinement as well
    if (both - whole).abs() <= abs_tol.max(16.0 * f64::EPSILON * both.abs()) || depth > 30 {
        acc.add(left);
        acc.add(right);
        return;
    }
    refine(f, a, mid, left, 0.5 * abs_tol, rule, depth + 1, acc);
    refine(f, mid, b, right, 0.5 * abs_tol, rule, depth + 1, acc);
}

/// `K₀(x)` from its integral representation.
pub fn k0_quadrature(x: f64) -> f64 {
    assert!(x > 0.0 && x < 700.0);
    // e^{-x cosh t} = e^{-x} e^{-2x sinh²(t/2)}; integrate the scaled form
    let scaled = move |t: f64| {
        let s = (0.5 * t).sinh();
        (-2.0 * x * s * s).exp()
    };
    // past this point the integrand is below 1e-320 relative to its peak
    let upper = 2.0 * ((740.0 / (2.0 * x)).sqrt()).asinh();
    // split at the knee of the plateau so the adaptive rule sees it early
    let knee = (2.0 / x).ln().max(1.0).min(upper);
    let total = integrate(&scaled, 0.0, knee, 1e-15) + integrate(&scaled, knee, upper, 1e-15);
    total * (-x).exp()
}

/// `I₀(x) = Σ (x/2)^{2k} / (k!)²`, summed until the term drops below 1e-20 of the sum.
pub fn i0_series_oracle(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut acc = CompensatedSum::default();
    acc.add(term);
    let mut k = 1.0;
    loop {
        term *= y / (k * k);
        acc.add(term);
        if term < 1e-20 * acc.value() {
            break;
        }
        k += 1.0;
    }
    acc.value()
}
