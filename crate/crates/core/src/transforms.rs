//! The Lévy integral transformations
//!
//! ```text
//! f̃_α(x) = ∫₀^∞ M_α(t, x) f(t) dt,      L[f̃_α](p) = F(p^α)
//! f̄_α(x) = ∫₀^∞ N_α(t, x) f(t) dt,      L[f̄_α](p) = p^{α−1} F(p^α)
//! ```
//!
//! together with a small catalog of Laplace pairs and the machinery that
//! checks both identities numerically.
//!
//! For α = 1/2 the two transforms reduce to the classical tables
//!
//! ```text
//! L⁻¹[F(√p)](x)        = 1/(2√(πx³)) ∫₀^∞ t e^{−t²/(4x)} f(t) dt
//! L⁻¹[F(√p)/√p](x)     = 1/√(πx)     ∫₀^∞   e^{−t²/(4x)} f(t) dt
//! ```
//!
//! which are available as [`half_order_tilde_reference`] and
//! [`half_order_bar_reference`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityEvaluator;
use crate::error::{Error, Result};
use crate::kernels::{ln_m, ln_n};
use crate::laplace::{complex_power, forward_laplace_with};
use crate::order::RationalOrder;
use crate::quadrature::integrate_semi_infinite;
pub use crate::quadrature::QuadratureConfig;
use crate::report::{ErrorMetric, VerificationReport};

/// Pass threshold (relative) for the Laplace-transform identities.
pub const THEOREM1_TOLERANCE: f64 = 1e-6;
/// Pass threshold (relative) for the catalog self-test.
pub const SELF_TEST_TOLERANCE: f64 = 1e-9;
pub const SELF_TEST_POINTS: [f64; 3] = [0.5, 1.0, 2.0];

/// Behaviour of an original at both ends of the half line:
/// `|f(t)| = O(t^zero_exponent)` as `t → 0` and `O(e^{exp_rate·t})` as
/// `t → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    pub zero_exponent: f64,
    pub exp_rate: f64,
}

impl Growth {
    pub const BOUNDED: Growth = Growth {
        zero_exponent: 0.0,
        exp_rate: 0.0,
    };
}

/// A function on `(0, ∞)` with declared growth. The growth is a promise from
/// the caller; the transforms use it to reject integrals that diverge.
pub trait Original: Sync {
    fn eval(&self, t: f64) -> f64;
    fn growth(&self) -> Growth;
}

/// Wraps a closure as an [`Original`].
pub struct FnOriginal<F> {
    f: F,
    growth: Growth,
}

impl<F: Fn(f64) -> f64 + Sync> FnOriginal<F> {
    pub fn new(f: F, growth: Growth) -> Self {
        Self { f, growth }
    }
}

impl<F: Fn(f64) -> f64 + Sync> Original for FnOriginal<F> {
    fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
    fn growth(&self) -> Growth {
        self.growth
    }
}

/// An original with its known Laplace transform.
#[derive(Debug, Clone, Copy)]
pub struct LaplacePair {
    pub name: &'static str,
    pub description: &'static str,
    pub f: fn(f64) -> f64,
    /// `F(p)`, valid for complex `p` to the right of the growth abscissa.
    pub transform: fn(Complex64) -> Complex64,
    pub growth: Growth,
}

impl Original for LaplacePair {
    fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
    fn growth(&self) -> Growth {
        self.growth
    }
}

impl LaplacePair {
    /// `F(p)` for real `p`.
    pub fn transform_real(&self, p: f64) -> f64 {
        (self.transform)(Complex64::new(p, 0.0)).re
    }

    /// Forward Laplace transform of `f` against the tabulated `F` at
    /// [`SELF_TEST_POINTS`].
    pub fn self_test(&self, quad: &QuadratureConfig) -> Result<Vec<VerificationReport>> {
        SELF_TEST_POINTS
            .iter()
            .map(|&p| {
                let observed = forward_laplace_with(|t| Ok((self.f)(t)), p, quad)?;
                Ok(VerificationReport::new(
                    "catalog_self_test",
                    ErrorMetric::Relative,
                    observed,
                    self.transform_real(p),
                    SELF_TEST_TOLERANCE,
                )
                .param("f", self.name)
                .param("p", p))
            })
            .collect()
    }
}

const CATALOG: [LaplacePair; 4] = [
    LaplacePair {
        name: "one",
        description: "f(t) = 1, F(p) = 1/p",
        f: |_| 1.0,
        transform: |p| 1.0 / p,
        growth: Growth::BOUNDED,
    },
    LaplacePair {
        name: "exp",
        description: "f(t) = exp(-t), F(p) = 1/(1+p)",
        f: |t| (-t).exp(),
        transform: |p| 1.0 / (1.0 + p),
        growth: Growth {
            zero_exponent: 0.0,
            exp_rate: -1.0,
        },
    },
    LaplacePair {
        name: "texp",
        description: "f(t) = t exp(-t), F(p) = 1/(1+p)^2",
        f: |t| t * (-t).exp(),
        transform: |p| 1.0 / ((1.0 + p) * (1.0 + p)),
        growth: Growth {
            zero_exponent: 1.0,
            exp_rate: -1.0,
        },
    },
    LaplacePair {
        name: "rsqrt",
        description: "f(t) = 1/sqrt(t), F(p) = sqrt(pi/p)",
        f: |t| 1.0 / t.sqrt(),
        transform: |p| PI.sqrt() / p.sqrt(),
        growth: Growth {
            zero_exponent: -0.5,
            exp_rate: 0.0,
        },
    },
];

/// Every built-in pair.
pub fn catalog() -> &'static [LaplacePair] {
    &CATALOG
}

/// Looks a pair up by name.
pub fn catalog_entry(name: &str) -> Option<&'static LaplacePair> {
    CATALOG.iter().find(|p| p.name == name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    /// f̃_α, kernel M_α.
    Tilde,
    /// f̄_α, kernel N_α.
    Bar,
}

impl TransformKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TransformKind::Tilde => "tilde",
            TransformKind::Bar => "bar",
        }
    }
}

/// The variant of the Laplace identity being checked.
pub type Theorem1Variant = TransformKind;

/// f̃_α(x) or f̄_α(x) with a caller-supplied density evaluator.
///
/// The split point of the half-line quadrature is moved to `tail_cut · x^α`,
/// where the kernel has its mass.
pub fn transform_with<O: Original + ?Sized>(
    eval: &DensityEvaluator,
    kind: TransformKind,
    f: &O,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("transform requires x > 0, got {x}")));
    }
    // M ~ t and N ~ const as t → 0
    let limit = match kind {
        TransformKind::Tilde => -2.0,
        TransformKind::Bar => -1.0,
    };
    let growth = f.growth();
    if !(growth.zero_exponent > limit) {
        return Err(Error::Domain(format!(
            "{} transform diverges at t = 0 for f ~ t^{}",
            kind.as_str(),
            growth.zero_exponent
        )));
    }
    let alpha = eval.order().value();
    let cfg = quad.with_tail_cut(quad.tail_cut * x.powf(alpha));
    let r = integrate_semi_infinite(
        |t| {
            let lk = match kind {
                TransformKind::Tilde => ln_m(eval, t, x)?,
                TransformKind::Bar => ln_n(eval, t, x)?,
            };
            let k = lk.exp();
            if k == 0.0 {
                return Ok(0.0);
            }
            Ok(k * f.eval(t))
        },
        &cfg,
    )?;
    Ok(r.value)
}

pub fn transform<O: Original + ?Sized>(
    kind: TransformKind,
    f: &O,
    order: RationalOrder,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    transform_with(&DensityEvaluator::new(order), kind, f, x, quad)
}

/// f̃_α(x) = ∫₀^∞ M_α(t, x) f(t) dt.
pub fn tilde_transform<O: Original + ?Sized>(
    f: &O,
    order: RationalOrder,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    transform(TransformKind::Tilde, f, order, x, quad)
}

/// f̄_α(x) = (x/α) ∫₀^∞ t^{−1−1/α} g_α(x t^{−1/α}) f(t) dt.
pub fn bar_transform<O: Original + ?Sized>(
    f: &O,
    order: RationalOrder,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    transform(TransformKind::Bar, f, order, x, quad)
}

fn half_order_reference<O: Original + ?Sized>(
    f: &O,
    x: f64,
    quad: &QuadratureConfig,
    with_t: bool,
) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("reference requires x > 0, got {x}")));
    }
    let cfg = quad.with_tail_cut(quad.tail_cut * x.sqrt());
    let r = integrate_semi_infinite(
        |t| {
            let w = (-t * t / (4.0 * x)).exp();
            if w == 0.0 {
                return Ok(0.0);
            }
            let v = w * f.eval(t);
            Ok(if with_t { t * v } else { v })
        },
        &cfg,
    )?;
    Ok(if with_t {
        r.value / (2.0 * (PI * x * x * x).sqrt())
    } else {
        r.value / (PI * x).sqrt()
    })
}

/// `1/(2√(πx³)) ∫₀^∞ t e^{−t²/(4x)} f(t) dt`, the tabulated α = 1/2 case of
/// the tilde transform.
pub fn half_order_tilde_reference<O: Original + ?Sized>(
    f: &O,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    half_order_reference(f, x, quad, true)
}

/// `1/√(πx) ∫₀^∞ e^{−t²/(4x)} f(t) dt`, the tabulated α = 1/2 case of the
/// bar transform.
pub fn half_order_bar_reference<O: Original + ?Sized>(
    f: &O,
    x: f64,
    quad: &QuadratureConfig,
) -> Result<f64> {
    half_order_reference(f, x, quad, false)
}

/// The right-hand side of the identity: `F(p^α)` or `p^{α−1}F(p^α)`.
pub fn theorem1_target(pair: &LaplacePair, order: RationalOrder, variant: Theorem1Variant, p: f64) -> Result<f64> {
    let alpha = order.value();
    let pa = complex_power(Complex64::new(p, 0.0), alpha)?;
    let f = (pair.transform)(pa).re;
    Ok(match variant {
        TransformKind::Tilde => f,
        TransformKind::Bar => p.powf(alpha - 1.0) * f,
    })
}

/// Forward Laplace transform (in x) of the chosen transform of `pair.f`,
/// against [`theorem1_target`]. The inner quadrature runs 100 times tighter
/// than `quad`; the report passes at relative error [`THEOREM1_TOLERANCE`].
pub fn verify_theorem1(
    pair: &LaplacePair,
    order: RationalOrder,
    variant: Theorem1Variant,
    p: f64,
    quad: &QuadratureConfig,
) -> Result<VerificationReport> {
    quad.validate()?;
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("p must be positive, got {p}")));
    }
    if p.powf(order.value()) <= pair.growth.exp_rate {
        return Err(Error::Domain(format!(
            "F(p^alpha) undefined: p^alpha <= growth rate {}",
            pair.growth.exp_rate
        )));
    }
    let eval = DensityEvaluator::new(order);
    let inner = quad.tightened(100.0);
    let observed = forward_laplace_with(|x| transform_with(&eval, variant, pair, x, &inner), p, quad)?;
    let expected = theorem1_target(pair, order, variant, p)?;
    Ok(VerificationReport::new(
        format!("theorem1_{}", variant.as_str()),
        ErrorMetric::Relative,
        observed,
        expected,
        THEOREM1_TOLERANCE,
    )
    .param("f", pair.name)
    .param("alpha", order)
    .param("p", p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> RationalOrder {
        s.parse().unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn quad() -> QuadratureConfig {
        QuadratureConfig::new(1e-13, 1e-11, 2000, 1.0).unwrap()
    }

    #[test]
    fn catalog_self_tests() {
        for pair in catalog() {
            for r in pair.self_test(&quad()).unwrap() {
                assert!(r.pass, "{r}");
            }
        }
        assert!(catalog_entry("exp").is_some());
        assert!(catalog_entry("nosuch").is_none());
    }

    #[test]
    fn tilde_of_one_is_inverse_sqrt() {
        let one = catalog_entry("one").unwrap();
        for &x in &[1.0, 4.0] {
            let v = tilde_transform(one, order("1/2"), x, &quad()).unwrap();
            assert!(rel(v, 1.0 / (PI * x).sqrt()) < 1e-10, "x={x}: {v}");
        }
    }

    #[test]
    fn bar_of_one_is_one() {
        let one = catalog_entry("one").unwrap();
        for s in ["1/3", "1/2", "2/3", "3/4"] {
            for &x in &[0.1, 1.0, 7.0] {
                let v = bar_transform(one, order(s), x, &quad()).unwrap();
                assert!((v - 1.0).abs() < 1e-9, "alpha={s} x={x}: {v}");
            }
        }
    }

    #[test]
    fn bar_half_of_identity() {
        // (1/√π) ∫ t e^{−t²/4} dt = 2/√π at x = 1
        let id = FnOriginal::new(|t| t, Growth { zero_exponent: 1.0, exp_rate: 0.0 });
        let v = bar_transform(&id, order("1/2"), 1.0, &quad()).unwrap();
        assert!(rel(v, 2.0 / PI.sqrt()) < 1e-10);
        let r = half_order_bar_reference(&id, 1.0, &quad()).unwrap();
        assert!(rel(r, 2.0 / PI.sqrt()) < 1e-12);
    }

    #[test]
    fn rejects_divergent_originals() {
        let bad = FnOriginal::new(|t| 1.0 / t, Growth { zero_exponent: -1.0, exp_rate: 0.0 });
        assert!(bar_transform(&bad, order("1/2"), 1.0, &quad()).is_err());
        assert!(tilde_transform(&bad, order("1/2"), 1.0, &quad()).is_ok());
    }

    #[test]
    fn targets() {
        let exp = catalog_entry("exp").unwrap();
        let texp = catalog_entry("texp").unwrap();
        assert!(rel(theorem1_target(exp, order("1/2"), TransformKind::Tilde, 1.0).unwrap(), 0.5) < 1e-15);
        assert!(rel(theorem1_target(exp, order("1/2"), TransformKind::Bar, 4.0).unwrap(), 1.0 / 6.0) < 1e-15);
        assert!(rel(theorem1_target(texp, order("2/3"), TransformKind::Tilde, 1.0).unwrap(), 0.25) < 1e-15);
    }

    #[test]
    fn theorem1_example() {
        let exp = catalog_entry("exp").unwrap();
        let q = QuadratureConfig::new(1e-12, 1e-9, 2000, 1.0).unwrap();
        let r = verify_theorem1(exp, order("1/2"), TransformKind::Tilde, 1.0, &q).unwrap();
        assert!(r.pass, "{r}");
    }
}
