use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::order::RationalOrder;

/// A parameter value recorded in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Real(f64),
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_owned())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

impl From<RationalOrder> for ParamValue {
    fn from(v: RationalOrder) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMetric {
    Absolute,
    Relative,
}

/// Outcome of checking one identity at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, ParamValue>,
    pub observed: f64,
    pub expected: f64,
    pub metric: ErrorMetric,
    pub observed_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Why the check could not be evaluated, if it could not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn new(
        identity: impl Into<String>,
        metric: ErrorMetric,
        observed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let diff = (observed - expected).abs();
        let observed_error = match metric {
            ErrorMetric::Absolute => diff,
            ErrorMetric::Relative if expected != 0.0 => diff / expected.abs(),
            ErrorMetric::Relative => diff,
        };
        Self {
            identity: identity.into(),
            params: BTreeMap::new(),
            observed,
            expected,
            metric,
            observed_error,
            tolerance,
            pass: observed_error.is_finite() && observed_error <= tolerance,
            note: None,
        }
    }

    /// A failing report for a check whose evaluation raised an error.
    pub fn failed(identity: impl Into<String>, metric: ErrorMetric, tolerance: f64, note: impl ToString) -> Self {
        Self {
            identity: identity.into(),
            params: BTreeMap::new(),
            observed: f64::NAN,
            expected: f64::NAN,
            metric,
            observed_error: f64::INFINITY,
            tolerance,
            pass: false,
            note: Some(note.to_string()),
        }
    }

    /// Re-judges the report against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.note.is_none() && self.observed_error.is_finite() && self.observed_error <= tolerance;
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    /// `k=v` pairs joined by spaces, in key order.
    pub fn params_summary(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} {} err={:.3e} tol={:.1e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            self.params_summary(),
            self.observed_error,
            self.tolerance
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}
