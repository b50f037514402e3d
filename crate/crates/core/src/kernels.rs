//! The kernels `M_α(t, x) = t^{−1/α} g_α(x t^{−1/α})` and
//! `N_α(t, x) = x/(αt) · M_α(t, x)`.
//!
//! Both are composed from the density in log space, so the rescaling by
//! `t^{−1/α}` never overflows; a kernel that underflows is returned as 0.
//! Their accuracy is exactly that of the density.

use serde::{Deserialize, Serialize};

use crate::density::DensityEvaluator;
use crate::error::{Error, Result};
use crate::order::RationalOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    M,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelSpec {
    pub order: RationalOrder,
    pub kind: KernelKind,
}

impl KernelSpec {
    pub fn new(order: RationalOrder, kind: KernelKind) -> Self {
        Self { order, kind }
    }

    pub fn eval(&self, t: f64, x: f64) -> Result<f64> {
        let eval = DensityEvaluator::new(self.order);
        match self.kind {
            KernelKind::M => ln_m(&eval, t, x).map(f64::exp),
            KernelKind::N => ln_n(&eval, t, x).map(f64::exp),
        }
    }
}

fn check(t: f64, x: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite() && x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!(
            "kernels require t > 0 and x > 0, got t = {t}, x = {x}"
        )));
    }
    Ok(())
}

/// `ln M_α(t, x)`.
pub fn ln_m(eval: &DensityEvaluator, t: f64, x: f64) -> Result<f64> {
    check(t, x)?;
    let inv_alpha = 1.0 / eval.order().value();
    let ln_scale = inv_alpha * t.ln();
    let ln_g = eval.ln_density_at_ln(x.ln() - ln_scale)?;
    Ok(ln_g - ln_scale)
}

/// `ln N_α(t, x)`.
pub fn ln_n(eval: &DensityEvaluator, t: f64, x: f64) -> Result<f64> {
    let lm = ln_m(eval, t, x)?;
    Ok(lm + x.ln() - eval.order().value().ln() - t.ln())
}

/// M_α(t, x).
pub fn m_kernel(order: RationalOrder, t: f64, x: f64) -> Result<f64> {
    KernelSpec::new(order, KernelKind::M).eval(t, x)
}

/// N_α(t, x).
pub fn n_kernel(order: RationalOrder, t: f64, x: f64) -> Result<f64> {
    KernelSpec::new(order, KernelKind::N).eval(t, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::density;

    fn half() -> RationalOrder {
        RationalOrder::new(1, 2).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_time_is_the_density() {
        let g = density(half(), 1.0).unwrap();
        assert!(rel(m_kernel(half(), 1.0, 1.0).unwrap(), g) < 1e-15);
        assert!(rel(n_kernel(half(), 1.0, 1.0).unwrap(), 2.0 * g) < 1e-15);
        assert!((n_kernel(half(), 1.0, 1.0).unwrap() - 0.43939128).abs() < 1e-8);
    }

    #[test]
    fn rescaled_example() {
        let expect = density(half(), 1.0 / 16.0).unwrap() / 16.0;
        assert!(rel(m_kernel(half(), 4.0, 1.0).unwrap(), expect) < 1e-14);
        assert!((expect - 0.020_666_985_354_092_05).abs() < 1e-15);
    }

    #[test]
    fn vanishes_at_origin_and_never_overflows() {
        let third = RationalOrder::new(1, 3).unwrap();
        assert_eq!(m_kernel(third, 1.0, 1e-9).unwrap(), 0.0);
        assert_eq!(n_kernel(third, 1.0, 1e-9).unwrap(), 0.0);
        assert!(m_kernel(third, 1.0, 1e-6).unwrap() < 1e-150);
        let tiny_t = m_kernel(third, 1e-30, 1.0).unwrap();
        assert!(tiny_t.is_finite() && tiny_t >= 0.0);
    }

    #[test]
    fn ratio_example() {
        let m = m_kernel(half(), 2.0, 3.0).unwrap();
        let n = n_kernel(half(), 2.0, 3.0).unwrap();
        assert!(rel(n, 3.0 * m) < 1e-14);
    }

    #[test]
    fn domain() {
        assert!(m_kernel(half(), 0.0, 1.0).is_err());
        assert!(n_kernel(half(), 1.0, -1.0).is_err());
    }
}
