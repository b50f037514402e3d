//! Gamma and log-gamma via the Lanczos approximation (g = 7, nine terms).

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ(x) is representable.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// `ln(2π)/2`
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (original argument minus one)
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// `sin(πx)` with exact argument reduction, so that integer arguments give
/// exactly zero.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    (PI * r).sin()
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x) for real `x` that is not a non-positive integer.
///
/// Arguments below 1/2 go through the reflection formula.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Domain(format!("gamma({x}) overflows f64")));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let g = gamma(1.0 - x)?;
        let value = PI / (s * g);
        if !value.is_finite() {
            return Err(Error::Domain(format!("gamma({x}) overflows f64")));
        }
        return Ok(value);
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    let a = lanczos_sum(xm1);
    // split the power to keep t^(x-1/2) finite up to the overflow limit
    let half = t.powf(0.5 * (xm1 + 0.5));
    Ok((2.0 * PI).sqrt() * a * half * (half * (-t).exp()))
}

/// ln|Γ(x)| for real `x` that is not a non-positive integer.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("ln_gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::GammaPole(x));
    }
    if x < 0.5 {
        let s = sin_pi(x).abs();
        return Ok((PI / s).ln() - ln_gamma(1.0 - x)?);
    }
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    Ok(HALF_LN_TWO_PI + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln())
}
