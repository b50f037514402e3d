//! Verification grids for every identity, run in parallel and returned in
//! grid order.
//!
//! A grid point whose evaluation fails (quadrature budget exhausted, say)
//! yields a failing report carrying the error message instead of aborting
//! the suite.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::verify_defining_property;
use crate::error::{Error, Result};
use crate::identities::{
    correlation_F, correlation_F_by_quadrature, j_by_talbot, j_integral, m_convolution_lhs,
    n_convolution_lhs, ClosedCase, CorrelationParams,
};
use crate::kernels::{m_kernel, n_kernel};
use crate::laplace::TalbotConfig;
use crate::order::RationalOrder;
use crate::quadrature::QuadratureConfig;
use crate::report::{ErrorMetric, VerificationReport};
use crate::special::gamma;
use crate::transforms::{catalog_entry, verify_theorem1, LaplacePair, TransformKind};

pub const DEFINING_ORDERS: [&str; 5] = ["1/3", "1/2", "2/3", "3/4", "5/6"];
pub const DEFINING_P: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
pub const THEOREM1_PAIRS: [&str; 3] = ["one", "exp", "texp"];
pub const THEOREM1_ORDERS: [&str; 4] = ["1/3", "1/2", "2/3", "3/4"];
pub const THEOREM1_P: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
pub const PAIR_ORDERS: [(&str, &str); 3] = [("1/2", "1/2"), ("2/3", "1/2"), ("3/4", "2/3")];
pub const XY_GRID: [f64; 3] = [0.5, 1.0, 2.0];
pub const CORRELATION_P: [f64; 3] = [0.5, 1.0, 2.0];
pub const CORRELATION_Y: [f64; 2] = [0.5, 1.0];
/// Relative tolerance of the algebraic swap identity.
pub const SYMMETRY_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Defining,
    Theorem1,
    Transitivity,
    Correlation,
    JCases,
    All,
}

impl Suite {
    pub const VALUES: [Suite; 6] = [
        Suite::Defining,
        Suite::Theorem1,
        Suite::Transitivity,
        Suite::Correlation,
        Suite::JCases,
        Suite::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Defining => "defining",
            Suite::Theorem1 => "theorem1",
            Suite::Transitivity => "transitivity",
            Suite::Correlation => "correlation",
            Suite::JCases => "j-cases",
            Suite::All => "all",
        }
    }

    /// Pass threshold used when none is given. Absolute for `defining`,
    /// relative elsewhere.
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Suite::Defining => 1e-8,
            Suite::Theorem1 | Suite::Transitivity | Suite::JCases => 1e-6,
            Suite::Correlation => 1e-5,
            Suite::All => f64::NAN,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::VALUES
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

fn order(s: &str) -> RationalOrder {
    s.parse().expect("valid literal order")
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Quadrature tolerances two orders of magnitude below a relative pass
/// threshold.
fn quad_for(tol: f64) -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-14,
        rel_tol: (tol * 1e-2).clamp(1e-13, 1e-8),
        ..QuadratureConfig::default()
    }
}

fn or_failed(
    r: Result<VerificationReport>,
    identity: &str,
    metric: ErrorMetric,
    tol: f64,
    params: &[(&str, String)],
) -> VerificationReport {
    r.unwrap_or_else(|e| {
        params.iter().fold(VerificationReport::failed(identity, metric, tol, e), |acc, (k, v)| {
            acc.param(k, v.clone())
        })
    })
}

/// Runs one suite. `tolerance` overrides the suite's default pass threshold.
pub fn run_suite(suite: Suite, tolerance: Option<f64>) -> Result<Vec<VerificationReport>> {
    if let Some(t) = tolerance {
        check_tol(t)?;
    }
    let tol = tolerance.unwrap_or_else(|| suite.default_tolerance());
    match suite {
        Suite::Defining => defining(tol),
        Suite::Theorem1 => Ok(theorem1(tol)),
        Suite::Transitivity => Ok(transitivity(tol)),
        Suite::Correlation => Ok(correlation(tol)),
        Suite::JCases => Ok(j_cases(tol)),
        Suite::All => {
            let mut out = Vec::new();
            for s in &Suite::VALUES[..5] {
                out.extend(run_suite(*s, tolerance)?);
            }
            Ok(out)
        }
    }
}

/// `∫ e^{−px} g_α(x) dx = e^{−p^α}` on the defining grid; `tol` is absolute.
pub fn defining(tol: f64) -> Result<Vec<VerificationReport>> {
    check_tol(tol)?;
    let quad = QuadratureConfig::new(tol.max(1e-13), (tol * 1e-2).clamp(1e-13, 1e-8), 2000, 1.0)?;
    let grid: Vec<(&str, f64)> = DEFINING_ORDERS
        .iter()
        .flat_map(|a| DEFINING_P.iter().map(move |p| (*a, *p)))
        .collect();
    Ok(grid
        .par_iter()
        .map(|&(a, p)| {
            let r = verify_defining_property(order(a), p, &quad).map(|r| r.with_tolerance(tol));
            or_failed(
                r,
                "defining_property",
                ErrorMetric::Absolute,
                tol,
                &[("alpha", a.into()), ("p", p.to_string())],
            )
        })
        .collect())
}

fn pair(name: &str) -> &'static LaplacePair {
    catalog_entry(name).expect("catalog pair present")
}

/// Catalog self-test followed by both Laplace identities on the full grid.
pub fn theorem1(tol: f64) -> Vec<VerificationReport> {
    let self_quad = QuadratureConfig {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        ..QuadratureConfig::default()
    };
    let mut out: Vec<VerificationReport> = THEOREM1_PAIRS
        .iter()
        .flat_map(|name| {
            pair(name).self_test(&self_quad).unwrap_or_else(|e| {
                vec![VerificationReport::failed("catalog_self_test", ErrorMetric::Relative, 1e-9, e)
                    .param("f", *name)]
            })
        })
        .collect();

    let quad = quad_for(tol);
    let mut grid = Vec::new();
    for variant in [TransformKind::Tilde, TransformKind::Bar] {
        for name in THEOREM1_PAIRS {
            for a in THEOREM1_ORDERS {
                for p in THEOREM1_P {
                    grid.push((variant, name, a, p));
                }
            }
        }
    }
    out.par_extend(grid.par_iter().map(|&(variant, name, a, p)| {
        let r = verify_theorem1(pair(name), order(a), variant, p, &quad).map(|r| r.with_tolerance(tol));
        or_failed(
            r,
            &format!("theorem1_{}", variant.as_str()),
            ErrorMetric::Relative,
            tol,
            &[("f", name.into()), ("alpha", a.into()), ("p", p.to_string())],
        )
    }));
    out
}

/// Both kernel convolutions against `M_{αβ}` / `N_{αβ}`.
pub fn transitivity(tol: f64) -> Vec<VerificationReport> {
    let quad = quad_for(tol);
    let mut grid = Vec::new();
    for kind in ["m", "n"] {
        for (a, b) in PAIR_ORDERS {
            for x in XY_GRID {
                for y in XY_GRID {
                    grid.push((kind, a, b, x, y));
                }
            }
        }
    }
    grid.par_iter()
        .map(|&(kind, a, b, x, y)| {
            let identity = format!("{kind}_transitivity");
            let (alpha, beta) = (order(a), order(b));
            let r = (|| {
                let ab = alpha.product(&beta)?;
                let (lhs, rhs) = if kind == "m" {
                    (m_convolution_lhs(alpha, beta, y, x, &quad)?, m_kernel(ab, y, x)?)
                } else {
                    (n_convolution_lhs(alpha, beta, y, x, &quad)?, n_kernel(ab, y, x)?)
                };
                Ok(VerificationReport::new(identity.clone(), ErrorMetric::Relative, lhs, rhs, tol))
            })();
            or_failed(r, &identity, ErrorMetric::Relative, tol, &[])
                .param("alpha", a)
                .param("beta", b)
                .param("x", x)
                .param("y", y)
        })
        .collect()
}

/// Nested-quadrature correlation function against its closed form, then the
/// α ↔ β swap identity.
pub fn correlation(tol: f64) -> Vec<VerificationReport> {
    let quad = quad_for(tol);
    let mut grid = Vec::new();
    for (a, b) in PAIR_ORDERS {
        for p in CORRELATION_P {
            for y in CORRELATION_Y {
                grid.push((a, b, p, y));
            }
        }
    }
    let mut out: Vec<VerificationReport> = grid
        .par_iter()
        .map(|&(a, b, p, y)| {
            let params = CorrelationParams::new(order(a), order(b));
            let r = (|| {
                let q = correlation_F_by_quadrature(&params, p, y, &quad)?;
                let c = correlation_F(&params, p, y)?;
                Ok(VerificationReport::new("correlation_closed_form", ErrorMetric::Relative, q, c, tol))
            })();
            or_failed(r, "correlation_closed_form", ErrorMetric::Relative, tol, &[])
                .param("alpha", a)
                .param("beta", b)
                .param("p", p)
                .param("y", y)
        })
        .collect();
    out.extend(grid.iter().map(|&(a, b, p, y)| {
        let params = CorrelationParams::new(order(a), order(b));
        let (alpha, beta) = (params.alpha.value(), params.beta.value());
        let r = (|| {
            let lhs = correlation_F(&params, p, y)?;
            let rhs = p.powf(beta - alpha) * correlation_F(&params.swapped(), p, y)?;
            Ok(VerificationReport::new(
                "correlation_symmetry",
                ErrorMetric::Relative,
                lhs,
                rhs,
                SYMMETRY_TOLERANCE,
            ))
        })();
        or_failed(r, "correlation_symmetry", ErrorMetric::Relative, SYMMETRY_TOLERANCE, &[])
            .param("alpha", a)
            .param("beta", b)
            .param("p", p)
            .param("y", y)
    }));
    out
}

/// Each closed form against the quadrature of `J` and against Talbot
/// inversion, plus the exact `y = 0` reductions of cases (b) and (c).
pub fn j_cases(tol: f64) -> Vec<VerificationReport> {
    let quad = quad_for(tol);
    let talbot = TalbotConfig::default();
    let mut grid = Vec::new();
    for case in ClosedCase::ALL {
        for oracle in ["quadrature", "talbot"] {
            for x in XY_GRID {
                for y in XY_GRID {
                    grid.push((case, oracle, x, y));
                }
            }
        }
    }
    let mut out: Vec<VerificationReport> = grid
        .par_iter()
        .map(|&(case, oracle, x, y)| {
            let identity = format!("j_case_{}_vs_{oracle}", case.as_str());
            let params = case.params();
            let r = (|| {
                let closed = case.eval(x, y)?;
                let reference = if oracle == "quadrature" {
                    j_integral(params.alpha, params.beta, x, y, &quad)?
                } else {
                    j_by_talbot(&params, x, y, &talbot)?
                };
                Ok(VerificationReport::new(identity.clone(), ErrorMetric::Relative, closed, reference, tol))
            })();
            or_failed(r, &identity, ErrorMetric::Relative, tol, &[])
                .param("alpha", params.alpha)
                .param("beta", params.beta)
                .param("x", x)
                .param("y", y)
        })
        .collect();

    for case in [ClosedCase::B, ClosedCase::C] {
        for x in XY_GRID {
            let identity = format!("j_case_{}_zero_y", case.as_str());
            let r = (|| {
                let leading = match case {
                    ClosedCase::B => gamma(5.0 / 6.0)? / (2.0 * std::f64::consts::PI * x.powf(5.0 / 6.0)),
                    _ => gamma(0.75)? / (2f64.sqrt() * std::f64::consts::PI * x.powf(0.75)),
                };
                Ok(VerificationReport::new(
                    identity.clone(),
                    ErrorMetric::Relative,
                    case.eval(x, 0.0)?,
                    leading,
                    SYMMETRY_TOLERANCE,
                ))
            })();
            out.push(or_failed(r, &identity, ErrorMetric::Relative, SYMMETRY_TOLERANCE, &[]).param("x", x));
        }
    }
    out
}
