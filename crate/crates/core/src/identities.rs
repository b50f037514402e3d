//! Convolution identities between the kernels.
//!
//! * transitivity: `∫₀^∞ M_α(t, x) M_β(y, t) dt = M_{αβ}(y, x)` and the same
//!   with `N` in place of `M`;
//! * the mixed convolution `J_{α,β}(x, y) = ∫₀^∞ M_α(t, x) N_β(y, t) dt`,
//!   whose Laplace transform in x is the correlation function
//!   `F_{α,β}(p, y) = p^{α(β−1)} e^{−y p^{αβ}}`;
//! * closed forms of `J` for (α, β) = (2/3, 1/2), (1/2, 2/3), (1/2, 1/2).
//!
//! Swapping α and β multiplies the correlation function by a power of p:
//! `F_{α,β}(p, y) = p^{β−α} F_{β,α}(p, y)`.
//!
//! The closed forms have been checked against both the quadrature of `J`
//! and Talbot inversion of `F`. Two of them differ from the commonly
//! printed versions:
//!
//! * case (a): the Bessel argument is `2y^{3/2}/(3√(3x))`. The variant with
//!   `y^{2/3}` agrees only at `y = 1` (at x = 1, y = 2 it gives 0.3536
//!   against the true 0.15871).
//! * case (b): the middle term carries `y`, not `y^{1/3}`. The three terms
//!   are the residue series of `G^{3,0}_{1,3}` and the middle one scales as
//!   `(y³/27x)^{1/3}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityEvaluator;
use crate::error::{Error, Result};
use crate::kernels::{ln_m, ln_n};
use crate::laplace::{complex_power, forward_laplace_with, talbot_inverse, TalbotConfig};
use crate::order::RationalOrder;
use crate::quadrature::{integrate_semi_infinite, QuadratureConfig};
use crate::special::{bessel_k, gamma, hyp_pfq, PFqParams};

/// `Δ(k, a) = (a/k, (a+1)/k, …, (a+k−1)/k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaSequence {
    pub k: u32,
    pub a: f64,
    pub values: Vec<f64>,
}

pub fn delta_sequence(k: u32, a: f64) -> Result<DeltaSequence> {
    if k == 0 {
        return Err(Error::Domain("delta_sequence requires k >= 1".into()));
    }
    if !a.is_finite() {
        return Err(Error::Domain(format!("delta_sequence requires finite a, got {a}")));
    }
    let kf = k as f64;
    Ok(DeltaSequence {
        k,
        a,
        values: (0..k).map(|j| (a + j as f64) / kf).collect(),
    })
}

/// A pair of orders (α, β).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorrelationParams {
    pub alpha: RationalOrder,
    pub beta: RationalOrder,
}

impl CorrelationParams {
    pub fn new(alpha: RationalOrder, beta: RationalOrder) -> Self {
        Self { alpha, beta }
    }

    /// αβ in lowest terms. Fails when the reduced denominator exceeds the
    /// supported maximum.
    pub fn product(&self) -> Result<RationalOrder> {
        self.alpha.product(&self.beta)
    }

    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Domain(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Pairing {
    MM,
    NN,
    MN,
}

/// `∫₀^∞ K_α(t, x) K'_β(y, t) dt`, with the split placed where the second
/// kernel has its mass, `t ~ y^{1/β}`.
fn convolution(
    pairing: Pairing,
    alpha: RationalOrder,
    beta: RationalOrder,
    y: f64,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    check_positive("x", x)?;
    check_positive("y", y)?;
    let ea = DensityEvaluator::new(alpha);
    let eb = DensityEvaluator::new(beta);
    let cfg = quad.with_tail_cut(quad.tail_cut * y.powf(1.0 / beta.value()));
    let r = integrate_semi_infinite(
        |t| {
            let ln = match pairing {
                Pairing::MM => ln_m(&ea, t, x)? + ln_m(&eb, y, t)?,
                Pairing::NN => ln_n(&ea, t, x)? + ln_n(&eb, y, t)?,
                Pairing::MN => ln_m(&ea, t, x)? + ln_n(&eb, y, t)?,
            };
            Ok(ln.exp())
        },
        &cfg,
    )?;
    Ok(r.value)
}

/// `∫₀^∞ M_α(t, x) M_β(y, t) dt`, which equals `M_{αβ}(y, x)`.
pub fn m_convolution_lhs(
    alpha: RationalOrder,
    beta: RationalOrder,
    y: f64,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    convolution(Pairing::MM, alpha, beta, y, x, quad)
}

/// `∫₀^∞ N_α(t, x) N_β(y, t) dt`, which equals `N_{αβ}(y, x)`.
pub fn n_convolution_lhs(
    alpha: RationalOrder,
    beta: RationalOrder,
    y: f64,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    convolution(Pairing::NN, alpha, beta, y, x, quad)
}

/// `J_{α,β}(x, y) = ∫₀^∞ M_α(t, x) N_β(y, t) dt` by direct quadrature.
pub fn j_integral(
    alpha: RationalOrder,
    beta: RationalOrder,
    x: f64,
    y: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    convolution(Pairing::MN, alpha, beta, y, x, quad)
}

/// `F_{α,β}(p, y) = p^{α(β−1)} e^{−y p^{αβ}}`. `y = 0` is allowed.
#[allow(non_snake_case)]
pub fn correlation_F(params: &CorrelationParams, p: f64, y: f64) -> Result<f64> {
    check_positive("p", p)?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("y must be non-negative, got {y}")));
    }
    let a = params.alpha.value();
    let b = params.beta.value();
    Ok((a * (b - 1.0) * p.ln() - y * p.powf(a * b)).exp())
}

/// The Laplace transform in x of [`j_integral`], by nested quadrature with
/// the inner integral 100 times tighter than `quad`.
#[allow(non_snake_case)]
pub fn correlation_F_by_quadrature(
    params: &CorrelationParams,
    p: f64,
    y: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    quad.validate()?;
    check_positive("y", y)?;
    let inner = quad.tightened(100.0);
    forward_laplace_with(|x| j_integral(params.alpha, params.beta, x, y, &inner), p, quad)
}

/// `J_{α,β}(x, y)` by Talbot inversion of `p^{α(β−1)} e^{−y p^{αβ}}`.
pub fn j_by_talbot(params: &CorrelationParams, x: f64, y: f64, cfg: &TalbotConfig) -> Result<f64> {
    check_positive("x", x)?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("y must be non-negative, got {y}")));
    }
    let a = params.alpha.value();
    let b = params.beta.value();
    talbot_inverse(
        |p: Complex64| match (complex_power(p, a * (b - 1.0)), complex_power(p, a * b)) {
            (Ok(pre), Ok(pab)) => pre * (-y * pab).exp(),
            _ => Complex64::new(f64::NAN, 0.0),
        },
        x,
        cfg,
    )
}

fn check_xy(x: f64, y: f64) -> Result<()> {
    check_positive("x", x)?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("y must be non-negative, got {y}")));
    }
    Ok(())
}

/// `J_{2/3,1/2}(x, y) = y/(√3 π x) · K_{2/3}(2y^{3/2}/(3√(3x)))`.
///
/// At `y = 0` the limit `x^{−2/3}/Γ(1/3)` is returned.
pub fn j_closed_case_a(x: f64, y: f64) -> Result<f64> {
    check_xy(x, y)?;
    let z = 2.0 * y.powf(1.5) / (3.0 * (3.0 * x).sqrt());
    if z == 0.0 {
        return Ok(x.powf(-2.0 / 3.0) / gamma(1.0 / 3.0)?);
    }
    Ok(y / (3f64.sqrt() * PI * x) * bessel_k(2.0 / 3.0, z)?)
}

/// `J_{1/2,2/3}(x, y)` as a combination of three ₁F₂ with argument
/// `z = y³/(27x)`:
///
/// ```text
/// Γ(5/6)/(2π x^{5/6})   ₁F₂(5/6; 1/3, 2/3; z)
/// + y/(6Γ(5/6) x^{7/6}) ₁F₂(7/6; 2/3, 4/3; z)
/// − y²/(4√π x^{3/2})    ₁F₂(3/2; 4/3, 5/3; z)
/// ```
pub fn j_closed_case_b(x: f64, y: f64) -> Result<f64> {
    check_xy(x, y)?;
    let z = y * y * y / (27.0 * x);
    let g56 = gamma(5.0 / 6.0)?;
    let f1 = hyp_pfq(&PFqParams::new(vec![5.0 / 6.0], vec![1.0 / 3.0, 2.0 / 3.0])?, z)?;
    let f2 = hyp_pfq(&PFqParams::new(vec![7.0 / 6.0], vec![2.0 / 3.0, 4.0 / 3.0])?, z)?;
    let f3 = hyp_pfq(&PFqParams::new(vec![1.5], vec![4.0 / 3.0, 5.0 / 3.0])?, z)?;
    Ok(g56 / (2.0 * PI * x.powf(5.0 / 6.0)) * f1 + y / (6.0 * g56 * x.powf(7.0 / 6.0)) * f2
        - y * y / (4.0 * PI.sqrt() * x.powf(1.5)) * f3)
}

/// `J_{1/2,1/2}(x, y)` as a combination of three ₀F₂ with argument
/// `−w = −y⁴/(256x)`:
///
/// ```text
/// Γ(3/4)/(√2 π x^{3/4}) ₀F₂(; 1/4, 1/2; −w)
/// − y²/(8Γ(3/4) x^{5/4}) ₀F₂(; 3/4, 3/2; −w)
/// + y³/(12√π x^{3/2})    ₀F₂(; 5/4, 7/4; −w)
/// ```
///
/// The series alternate; for `w` beyond a few hundred the terms cancel and
/// accuracy is lost (the function is then exponentially small anyway).
pub fn j_closed_case_c(x: f64, y: f64) -> Result<f64> {
    check_xy(x, y)?;
    let w = y.powi(4) / (256.0 * x);
    let g34 = gamma(0.75)?;
    let f1 = hyp_pfq(&PFqParams::new(vec![], vec![0.25, 0.5])?, -w)?;
    let f2 = hyp_pfq(&PFqParams::new(vec![], vec![0.75, 1.5])?, -w)?;
    let f3 = hyp_pfq(&PFqParams::new(vec![], vec![1.25, 1.75])?, -w)?;
    Ok(g34 / (2f64.sqrt() * PI * x.powf(0.75)) * f1 - y * y / (8.0 * g34 * x.powf(1.25)) * f2
        + y.powi(3) / (12.0 * PI.sqrt() * x.powf(1.5)) * f3)
}

/// The three (α, β) pairs that have a closed form for `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedCase {
    /// α = 2/3, β = 1/2 (Bessel K).
    A,
    /// α = 1/2, β = 2/3 (₁F₂).
    B,
    /// α = β = 1/2 (₀F₂).
    C,
}

impl ClosedCase {
    pub const ALL: [ClosedCase; 3] = [ClosedCase::A, ClosedCase::B, ClosedCase::C];

    pub fn params(&self) -> CorrelationParams {
        let o = |l, k| RationalOrder::new(l, k).expect("valid literal order");
        match self {
            ClosedCase::A => CorrelationParams::new(o(2, 3), o(1, 2)),
            ClosedCase::B => CorrelationParams::new(o(1, 2), o(2, 3)),
            ClosedCase::C => CorrelationParams::new(o(1, 2), o(1, 2)),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            ClosedCase::A => j_closed_case_a(x, y),
            ClosedCase::B => j_closed_case_b(x, y),
            ClosedCase::C => j_closed_case_c(x, y),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ClosedCase::A => "a",
            ClosedCase::B => "b",
            ClosedCase::C => "c",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{m_kernel, n_kernel};

    fn order(s: &str) -> RationalOrder {
        s.parse().unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn quad() -> QuadratureConfig {
        QuadratureConfig::new(1e-14, 1e-10, 2000, 1.0).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_sequence(3, 0.0).unwrap().values, vec![0.0, 1.0 / 3.0, 2.0 / 3.0]);
        assert_eq!(delta_sequence(1, 1.0 / 3.0).unwrap().values, vec![1.0 / 3.0]);
        assert_eq!(delta_sequence(4, 0.0).unwrap().values, vec![0.0, 0.25, 0.5, 0.75]);
        assert!(delta_sequence(0, 1.0).is_err());
    }

    #[test]
    fn correlation_examples() {
        let p = CorrelationParams::new(order("1/2"), order("1/2"));
        assert!(rel(correlation_F(&p, 1.0, 1.0).unwrap(), (-1.0f64).exp()) < 1e-15);
        let p = CorrelationParams::new(order("2/3"), order("1/2"));
        assert!(rel(correlation_F(&p, 4.0, 0.0).unwrap(), 4f64.powf(-1.0 / 3.0)) < 1e-15);
    }

    #[test]
    fn swap_multiplies_by_power() {
        let p = CorrelationParams::new(order("1/2"), order("2/3"));
        let a = correlation_F(&p, 2.0, 1.0).unwrap();
        let b = correlation_F(&p.swapped(), 2.0, 1.0).unwrap();
        assert!(rel(a, 2f64.powf(2.0 / 3.0 - 0.5) * b) < 1e-15);
    }

    #[test]
    fn transitivity_example() {
        let a = order("1/2");
        let lhs = m_convolution_lhs(a, a, 1.0, 1.0, &quad()).unwrap();
        let rhs = m_kernel(order("1/4"), 1.0, 1.0).unwrap();
        assert!(rel(lhs, rhs) < 1e-8, "{lhs} {rhs}");
        assert!(rel(rhs, 0.095_833_854_142_670_89) < 1e-10);
        let lhs = n_convolution_lhs(order("2/3"), order("3/4"), 1.0, 1.0, &quad()).unwrap();
        let rhs = n_kernel(order("1/2"), 1.0, 1.0).unwrap();
        assert!(rel(lhs, rhs) < 1e-8, "{lhs} {rhs}");
    }

    #[test]
    fn closed_cases_at_zero_y() {
        assert!(rel(j_closed_case_b(1.0, 0.0).unwrap(), gamma(5.0 / 6.0).unwrap() / (2.0 * PI)) < 1e-15);
        assert!((j_closed_case_b(1.0, 0.0).unwrap() - 0.179_652_035_507_897).abs() < 1e-14);
        assert!(rel(j_closed_case_c(1.0, 0.0).unwrap(), gamma(0.75).unwrap() / (2f64.sqrt() * PI)) < 1e-15);
        assert!((j_closed_case_c(1.0, 0.0).unwrap() - 0.275_815_662_830_209).abs() < 1e-14);
        let a0 = j_closed_case_a(1.0, 0.0).unwrap();
        let a_small = j_closed_case_a(1.0, 1e-6).unwrap();
        assert!(a0.is_finite() && rel(a_small, a0) < 1e-3);
    }

    #[test]
    fn closed_cases_reference_values() {
        assert!(rel(j_closed_case_a(1.0, 1.0).unwrap(), 0.289_501_528_917_755_5) < 1e-12);
        assert!(rel(j_closed_case_a(1.0, 2.0).unwrap(), 0.158_706_132_259_462_29) < 1e-12);
        assert!(rel(j_closed_case_b(1.0, 1.0).unwrap(), 0.215_290_134_777_878_61) < 1e-12);
        assert!(rel(j_closed_case_c(1.0, 1.0).unwrap(), 0.212_485_180_429_549_34) < 1e-12);
    }

    #[test]
    fn closed_case_a_matches_talbot_off_unit_y() {
        let cfg = TalbotConfig::default();
        let t = j_by_talbot(&ClosedCase::A.params(), 1.0, 2.0, &cfg).unwrap();
        assert!(rel(j_closed_case_a(1.0, 2.0).unwrap(), t) < 1e-9);
    }
}
