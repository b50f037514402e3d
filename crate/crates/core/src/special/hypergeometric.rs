//! Generalized hypergeometric series pFq(a; b; z) for real parameters and
//! argument.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stop once this many consecutive terms are below `SERIES_EPS · |sum|`.
const QUIET_TERMS: usize = 3;
const SERIES_EPS: f64 = 1e-16;
pub const MAX_TERMS: usize = 10_000;

/// Upper list `(a_p)` and lower list `(b_q)` of a pFq series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PFqParams {
    upper: Vec<f64>,
    lower: Vec<f64>,
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

impl PFqParams {
    pub fn new(upper: Vec<f64>, lower: Vec<f64>) -> Result<Self> {
        if upper.iter().chain(&lower).any(|v| !v.is_finite()) {
            return Err(Error::Domain("pFq parameters must be finite".into()));
        }
        if let Some(b) = lower.iter().find(|b| is_non_positive_integer(**b)) {
            return Err(Error::Domain(format!(
                "lower parameter {b} is a pole of the series"
            )));
        }
        let params = Self { upper, lower };
        if params.upper.len() > params.lower.len() + 1 && !params.terminates() {
            return Err(Error::Unsupported(format!(
                "{}F{} diverges for every z != 0",
                params.upper.len(),
                params.lower.len()
            )));
        }
        Ok(params)
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    /// A non-positive integer upper parameter makes the series a polynomial.
    fn terminates(&self) -> bool {
        self.upper.iter().any(|a| is_non_positive_integer(*a))
    }
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    fn from_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Self {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn quick(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self { hi: s, lo: lo - (s - hi) }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::from_sum(self.hi, o.hi);
        let t = Self::from_sum(self.lo, o.lo);
        let u = Self::quick(s.hi, s.lo + t.hi);
        Self::quick(u.hi, u.lo + t.lo)
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::quick(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Self { hi: -q1, lo: 0.0 }));
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Self { hi: -q2, lo: 0.0 }));
        let q3 = r.hi / o.hi;
        Self::quick(q1, q2).add(Self { hi: q3, lo: 0.0 })
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Sum of `Σ_n Π(a_i)_n / Π(b_j)_n · zⁿ/n!` by term recursion.
///
/// The recursion and the running sum are carried in double-double
/// arithmetic, so alternating series lose accuracy only once the largest
/// term exceeds the sum by about 1e16. Summation stops when three
/// consecutive terms fall below `1e-16 · |sum|`; hitting 10 000 terms is a
/// convergence error.
pub fn hyp_pfq(params: &PFqParams, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("pFq argument must be finite, got {z}")));
    }
    let p = params.upper.len();
    let q = params.lower.len();
    if p == q + 1 && z.abs() >= 1.0 && !params.terminates() {
        return Err(Error::Unsupported(format!(
            "{p}F{q} series needs |z| < 1, got z = {z}"
        )));
    }

    let z = DoubleDouble { hi: z, lo: 0.0 };
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let mut num = z;
        let mut den = DoubleDouble::from_sum(nf, 1.0);
        for &a in &params.upper {
            num = num.mul(DoubleDouble::from_sum(a, nf));
        }
        for &b in &params.lower {
            den = den.mul(DoubleDouble::from_sum(b, nf));
        }
        term = term.mul(num).div(den);
        sum = sum.add(term);

        if !sum.hi.is_finite() || !term.hi.is_finite() {
            return Err(Error::Overflow {
                partial_sum: (sum.hi - term.hi).abs(),
            });
        }
        if term.hi == 0.0 || term.hi.abs() < SERIES_EPS * sum.hi.abs() {
            quiet += 1;
            if quiet >= QUIET_TERMS || term.hi == 0.0 {
                return Ok(sum.value());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence { terms: MAX_TERMS })
}
