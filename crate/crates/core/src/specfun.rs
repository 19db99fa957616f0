//! Modified Bessel functions of order zero.
//!
//! `K₀` is evaluated with the ascending series (which needs `I₀`) for
//! `x ≤ 2` and with Steed's continued fraction for the large-argument
//! regime. Both are accurate to a few ulps away from the seam and to
//! better than `1e-14` relative at the seam itself.

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Switch point between the series and large-argument regimes of `K₀`.
pub const K0_SERIES_LIMIT: f64 = 2.0;

/// Beyond this argument `K₀` is reported as an exact zero with the underflow flag set.
pub const K0_X_MAX: f64 = 700.0;

/// `I₀` overflows an `f64` slightly above this argument.
pub const I0_X_MAX: f64 = 713.0;

const I0_SERIES_LIMIT: f64 = 30.0;
const MAX_TERMS: usize = 10_000;

/// Evaluation regime used for a `K₀` value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Series,
    Asymptotic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Series => "series",
            Regime::Asymptotic => "asymptotic",
        }
    }
}

/// A single `K₀` evaluation with its diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BesselEval {
    pub x: f64,
    pub value: f64,
    pub regime: Regime,
    /// Set when `x > K0_X_MAX` and the value was flushed to zero.
    pub underflow: bool,
}

/// Evaluates `K₀(x)` and reports which regime produced the value.
pub fn bessel_k0_eval(x: f64) -> Result<BesselEval> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain {
            context: "bessel_k0 requires a finite x > 0",
            value: x,
        });
    }
    let eval = if x <= K0_SERIES_LIMIT {
        BesselEval {
            x,
            value: k0_series(x),
            regime: Regime::Series,
            underflow: false,
        }
    } else if x <= K0_X_MAX {
        BesselEval {
            x,
            value: k0_continued_fraction(x),
            regime: Regime::Asymptotic,
            underflow: false,
        }
    } else {
        BesselEval {
            x,
            value: 0.0,
            regime: Regime::Asymptotic,
            underflow: true,
        }
    };
    Ok(eval)
}

/// Modified Bessel function of the second kind, order zero.
pub fn bessel_k0(x: f64) -> Result<f64> {
    bessel_k0_eval(x).map(|e| e.value)
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 || x > I0_X_MAX {
        return Err(Error::Domain {
            context: "bessel_i0 requires 0 <= x <= 713",
            value: x,
        });
    }
    if x <= I0_SERIES_LIMIT {
        Ok(i0_series(x))
    } else {
        Ok(i0_asymptotic(x))
    }
}

fn i0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= y / (kf * kf);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

// I₀(x) ~ e^x / sqrt(2πx) · Σ ((2k-1)!!)² / (k! (8x)^k); every term is positive.
fn i0_asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        let next = term * (2.0 * kf - 1.0).powi(2) / (8.0 * kf * x);
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    // split the exponential so that x close to I0_X_MAX does not overflow early
    let half = (0.5 * x).exp();
    half * (half * sum / (2.0 * std::f64::consts::PI * x).sqrt())
}

/// `K₀(x) = -(ln(x/2) + γ) I₀(x) + Σ_{k≥1} H_k (x²/4)^k / (k!)²`.
pub(crate) fn k0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= y / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += harmonic * term;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

/// Steed's continued fraction (Temme's CF2) for `K₀`, valid for `x ≳ 2`.
pub(crate) fn k0_continued_fraction(x: f64) -> f64 {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s
}
