//! Scalar special functions used throughout the crate.

mod bessel;
mod gamma;
mod hypergeometric;

pub use bessel::{bessel_k, MAX_ORDER as BESSEL_MAX_ORDER};
pub use gamma::{gamma, ln_gamma, sin_pi};
pub use hypergeometric::{hyp_pfq, PFqParams, MAX_TERMS as PFQ_MAX_TERMS};
