//! The one-sided Lévy stable density g_α, defined by
//! `∫₀^∞ e^{−px} g_α(x) dx = exp(−p^α)`.
//!
//! Evaluation paths:
//!
//! * **closed form** for α = 1/2: `g(x) = exp(−1/(4x)) / (2√π x^{3/2})`.
//! * **series** for large x, convergent in `x^{−α}`:
//!   `g(x) = (1/π) Σ_{n≥1} (−1)^{n+1} Γ(nα+1)/n! · sin(πnα) · x^{−nα−1}`.
//!   Terms alternate and grow before they decay when `x` is small, so the
//!   ratio of the largest term to the sum is monitored.
//! * **integral** for small x, Zolotarev's representation with a positive
//!   integrand:
//!   `g(x) = α/(1−α) · x^{−1/(1−α)} / π · ∫₀^π A(φ) exp(−x^{−α/(1−α)} A(φ)) dφ`,
//!   `A(φ) = sin(αφ)^{α/(1−α)} sin((1−α)φ) / sin(φ)^{1/(1−α)}`.
//!   Nothing cancels, so the relative accuracy holds even where g is far
//!   below 1e−100.
//! * **Talbot**: fixed-Talbot inversion of `exp(−p^α)`. Available on request
//!   and used by the test-suite as an independent reference; it only has
//!   absolute accuracy, so it is never chosen automatically.
//!
//! All paths work on `ln x` and produce `ln g`, which keeps the kernels'
//! extreme rescalings free of overflow.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laplace::{complex_power, forward_laplace_with, talbot_inverse, TalbotConfig};
use crate::order::RationalOrder;
use crate::quadrature::{self, QuadratureConfig};
use crate::report::{ErrorMetric, VerificationReport};
use crate::special::ln_gamma;

/// Largest tolerated ratio of the biggest series term to the series sum.
const SERIES_MAX_CANCELLATION: f64 = 1e3;
/// `ln` of the smallest positive normal f64, with some margin.
const LN_UNDERFLOW: f64 = -745.0;

const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityMethod {
    /// Closed form when available, else series above the crossover and the
    /// integral representation below it (or when the series cancels badly).
    Auto,
    ClosedForm,
    Series,
    Integral,
    Talbot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AccuracyWarning {
    /// The density is below the smallest positive f64 and was flushed to 0.
    Underflow { ln_value: f64 },
    /// The error estimate of the chosen path exceeds the target.
    ToleranceNotMet { estimate: f64 },
}

/// A density value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityValue {
    pub value: f64,
    pub ln_value: f64,
    pub method: DensityMethod,
    pub rel_err_estimate: f64,
    pub warning: Option<AccuracyWarning>,
}

/// Configured evaluator for g_α. Immutable and cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityEvaluator {
    order: RationalOrder,
    large_x_terms: usize,
    crossover_x: f64,
    target_rel_err: f64,
    method: DensityMethod,
    closed_form: bool,
    talbot: TalbotConfig,
}

#[derive(Debug, Clone, Copy)]
struct LnDensity {
    ln_value: f64,
    method: DensityMethod,
    rel_err: f64,
}

impl DensityEvaluator {
    pub fn new(order: RationalOrder) -> Self {
        Self {
            order,
            large_x_terms: 400,
            crossover_x: 1.0,
            target_rel_err: 1e-12,
            method: DensityMethod::Auto,
            closed_form: true,
            talbot: TalbotConfig::default(),
        }
    }

    pub fn order(&self) -> RationalOrder {
        self.order
    }

    pub fn large_x_terms(&self) -> usize {
        self.large_x_terms
    }

    pub fn crossover_x(&self) -> f64 {
        self.crossover_x
    }

    pub fn target_rel_err(&self) -> f64 {
        self.target_rel_err
    }

    pub fn method(&self) -> DensityMethod {
        self.method
    }

    pub fn with_method(mut self, method: DensityMethod) -> Self {
        self.method = method;
        self
    }

    /// Turns off the α = 1/2 closed-form fast path in [`DensityMethod::Auto`].
    pub fn without_closed_form(mut self) -> Self {
        self.closed_form = false;
        self
    }

    pub fn with_large_x_terms(mut self, terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(Error::Config("large_x_terms must be positive".into()));
        }
        self.large_x_terms = terms;
        Ok(self)
    }

    pub fn with_crossover_x(mut self, crossover_x: f64) -> Result<Self> {
        if !(crossover_x > 0.0 && crossover_x.is_finite()) {
            return Err(Error::Config(format!(
                "crossover_x must be positive, got {crossover_x}"
            )));
        }
        self.crossover_x = crossover_x;
        Ok(self)
    }

    pub fn with_target_rel_err(mut self, target: f64) -> Result<Self> {
        if !(target > 1e-14 && target < 1e-2) {
            return Err(Error::Config(format!(
                "target_rel_err must lie in (1e-14, 1e-2), got {target:e}"
            )));
        }
        self.target_rel_err = target;
        Ok(self)
    }

    pub fn with_talbot(mut self, cfg: TalbotConfig) -> Result<Self> {
        cfg.validate()?;
        self.talbot = cfg;
        Ok(self)
    }

    fn alpha(&self) -> f64 {
        self.order.value()
    }

    /// g_α(x) with diagnostics.
    pub fn evaluate(&self, x: f64) -> Result<DensityValue> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("density requires 0 < x < inf, got {x}")));
        }
        let r = self.ln_density_impl(x.ln())?;
        let value = r.ln_value.exp();
        let warning = if value == 0.0 || value < f64::MIN_POSITIVE {
            Some(AccuracyWarning::Underflow {
                ln_value: r.ln_value,
            })
        } else if r.rel_err > self.target_rel_err {
            Some(AccuracyWarning::ToleranceNotMet {
                estimate: r.rel_err,
            })
        } else {
            None
        };
        Ok(DensityValue {
            value,
            ln_value: r.ln_value,
            method: r.method,
            rel_err_estimate: r.rel_err,
            warning,
        })
    }

    /// g_α(x).
    pub fn density(&self, x: f64) -> Result<f64> {
        self.evaluate(x).map(|v| v.value)
    }

    /// `ln g_α(e^{ln_x})`; `-inf` where the density underflows to zero.
    pub fn ln_density_at_ln(&self, ln_x: f64) -> Result<f64> {
        if ln_x.is_nan() {
            return Err(Error::Domain("ln x is NaN".into()));
        }
        if ln_x == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        if ln_x == f64::INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        self.ln_density_impl(ln_x).map(|r| r.ln_value)
    }

    fn ln_density_impl(&self, ln_x: f64) -> Result<LnDensity> {
        match self.method {
            DensityMethod::ClosedForm => self.closed_form(ln_x),
            DensityMethod::Series => self.series(ln_x).map(|s| {
                if s.cancellation > SERIES_MAX_CANCELLATION {
                    LnDensity {
                        rel_err: s.result.rel_err.max(f64::EPSILON * s.cancellation),
                        ..s.result
                    }
                } else {
                    s.result
                }
            }),
            DensityMethod::Integral => self.integral(ln_x),
            DensityMethod::Talbot => self.talbot(ln_x),
            DensityMethod::Auto => {
                if self.closed_form && self.order.is_half() {
                    return self.closed_form(ln_x);
                }
                if ln_x >= self.crossover_x.ln() {
                    if let Ok(s) = self.series(ln_x) {
                        if s.cancellation <= SERIES_MAX_CANCELLATION {
                            return Ok(s.result);
                        }
                    }
                }
                self.integral(ln_x)
            }
        }
    }

    fn closed_form(&self, ln_x: f64) -> Result<LnDensity> {
        if !self.order.is_half() {
            return Err(Error::Unsupported(format!(
                "closed form only available for alpha = 1/2, not {}",
                self.order
            )));
        }
        let inv_x = (-ln_x).exp();
        let ln_value = -std::f64::consts::LN_2 - LN_SQRT_PI - 1.5 * ln_x - 0.25 * inv_x;
        Ok(LnDensity {
            ln_value,
            method: DensityMethod::ClosedForm,
            rel_err: 4.0 * f64::EPSILON,
        })
    }

    fn series(&self, ln_x: f64) -> Result<SeriesOutcome> {
        let alpha = self.alpha();
        let ln_y = -alpha * ln_x;
        let ln_term = |n: u64| -> Result<f64> {
            let nf = n as f64;
            Ok(ln_gamma(nf * alpha + 1.0)? - ln_gamma(nf + 1.0)? + nf * ln_y)
        };
        let reference = ln_term(1)?;
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        let mut max_ln = reference;
        let mut prev_ln = f64::NEG_INFINITY;
        let mut converged = false;
        let mut used = 0;
        for n in 1..=self.large_x_terms as u64 {
            used = n;
            let lt = ln_term(n)?;
            max_ln = max_ln.max(lt);
            let rel_mag = (lt - reference).exp();
            if !rel_mag.is_finite() {
                return Err(Error::Overflow {
                    partial_sum: sum.abs(),
                });
            }
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let term = sign * self.order.sin_pi_multiple(n) * rel_mag;
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            if lt < prev_ln && rel_mag < 1e-17 * (sum + comp).abs() {
                converged = true;
                break;
            }
            prev_ln = lt;
        }
        if !converged {
            return Err(Error::Convergence {
                terms: self.large_x_terms,
            });
        }
        let total = sum + comp;
        if !(total > 0.0) {
            return Err(Error::Domain(
                "series sum is not positive; cancellation too severe".into(),
            ));
        }
        let cancellation = (max_ln - reference).exp() / total;
        let ln_value = reference + total.ln() - PI.ln() - ln_x;
        Ok(SeriesOutcome {
            result: LnDensity {
                ln_value,
                method: DensityMethod::Series,
                rel_err: f64::EPSILON * (used as f64).sqrt() * cancellation.max(1.0) * 8.0,
            },
            cancellation,
        })
    }

    fn integral(&self, ln_x: f64) -> Result<LnDensity> {
        let alpha = self.alpha();
        let beta = 1.0 - alpha;
        let ratio = alpha / beta;
        let a0 = beta * alpha.powf(ratio);
        // k = a0 · x^{−α/(1−α)}
        let ln_k = a0.ln() - ratio * ln_x;
        let k = ln_k.exp();
        let ln_prefactor = ratio.ln() - ln_x / beta - PI.ln() + a0.ln();

        if !k.is_finite() {
            return Ok(LnDensity {
                ln_value: f64::NEG_INFINITY,
                method: DensityMethod::Integral,
                rel_err: 0.0,
            });
        }

        let integrand = |phi: f64| -> Result<f64> {
            let ln_s = zolotarev_ln_shape(alpha, phi);
            if !ln_s.is_finite() {
                return Ok(0.0);
            }
            let expo = -k * ln_s.exp_m1();
            if expo < LN_UNDERFLOW - 40.0 {
                return Ok(0.0);
            }
            Ok((ln_s + expo).exp())
        };

        // S − 1 ≈ αφ²/2 near 0; the peak has width ~ sqrt(2/(kα))
        let width = (2.0 / (k * alpha)).sqrt();
        let ratio = (PI / width).powf(1.0 / 12.0).max(4.0);
        let mut breaks = vec![0.0];
        let mut b = width;
        while b < PI {
            breaks.push(b);
            b *= ratio;
        }
        breaks.push(PI);

        let cfg = QuadratureConfig {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol: (0.1 * self.target_rel_err).max(2e-15),
            max_subdivisions: 500,
            tail_cut: 1.0,
        };
        let r = quadrature::integrate_breakpoints(integrand, &breaks, &cfg)?;
        if !(r.value > 0.0) {
            return Ok(LnDensity {
                ln_value: f64::NEG_INFINITY,
                method: DensityMethod::Integral,
                rel_err: 0.0,
            });
        }
        Ok(LnDensity {
            ln_value: ln_prefactor - k + r.value.ln(),
            method: DensityMethod::Integral,
            rel_err: r.abs_error / r.value + 1e-15 * (1.0 + k.min(1e6) * 1e-3),
        })
    }

    fn talbot(&self, ln_x: f64) -> Result<LnDensity> {
        let alpha = self.alpha();
        let x = ln_x.exp();
        let v = talbot_inverse(
            |p: Complex64| match complex_power(p, alpha) {
                Ok(pa) => (-pa).exp(),
                Err(_) => Complex64::new(f64::NAN, 0.0),
            },
            x,
            &self.talbot,
        )?;
        Ok(LnDensity {
            ln_value: if v > 0.0 { v.ln() } else { f64::NEG_INFINITY },
            method: DensityMethod::Talbot,
            rel_err: if v > 0.0 { 1e-11 / v.min(1.0) } else { f64::INFINITY },
        })
    }
}

struct SeriesOutcome {
    result: LnDensity,
    cancellation: f64,
}

/// `ln(sin u / u)` accurate for small u.
fn ln_sinc(u: f64) -> f64 {
    if u.abs() < 0.1 {
        let u2 = u * u;
        // −u²/6 − u⁴/180 − u⁶/2835 − u⁸/37800 − u¹⁰/467775
        -u2 * (1.0 / 6.0
            + u2 * (1.0 / 180.0 + u2 * (1.0 / 2835.0 + u2 * (1.0 / 37800.0 + u2 / 467_775.0))))
    } else {
        (u.sin() / u).ln()
    }
}

/// `ln(A(φ)/A(0))`, with the powers of φ cancelled analytically.
fn zolotarev_ln_shape(alpha: f64, phi: f64) -> f64 {
    let beta = 1.0 - alpha;
    (alpha / beta) * ln_sinc(alpha * phi) + ln_sinc(beta * phi) - ln_sinc(phi) / beta
}

/// g_α(x) with the default evaluator.
pub fn density(order: RationalOrder, x: f64) -> Result<f64> {
    DensityEvaluator::new(order).density(x)
}

/// Checks `∫₀^∞ e^{−px} g_α(x) dx = exp(−p^α)` at one `p`.
///
/// The quadrature runs at one hundredth of `quad.abs_tol`; the report passes
/// when the absolute deviation is within `quad.abs_tol`.
pub fn verify_defining_property(
    order: RationalOrder,
    p: f64,
    quad: &QuadratureConfig,
) -> Result<VerificationReport> {
    quad.validate()?;
    let eval = DensityEvaluator::new(order);
    let inner = quad.tightened(100.0);
    let integral = forward_laplace_with(|x| eval.density(x), p, &inner)?;
    let expected = (-p.powf(order.value())).exp();
    Ok(
        VerificationReport::new("defining_property", ErrorMetric::Absolute, integral, expected, quad.abs_tol)
            .param("alpha", order)
            .param("p", p),
    )
}
