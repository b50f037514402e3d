//! One-sided Lévy stable densities `g_α`, the integral transformations built
//! from them, and numerical certification of their Laplace identities.
//!
//! ```
//! use levy_laplace::{density, RationalOrder};
//!
//! let half: RationalOrder = "1/2".parse()?;
//! let g = density(half, 1.0)?;
//! assert!((g - 0.21969564).abs() < 1e-8);
//! # Ok::<(), levy_laplace::Error>(())
//! ```
//!
//! The guide in `book/` walks through every module; its code samples are
//! compiled and run as part of the test-suite.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod error;
pub mod identities;
pub mod kernels;
pub mod laplace;
pub mod order;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod suites;
pub mod transforms;

pub use density::{density, verify_defining_property, AccuracyWarning, DensityEvaluator, DensityMethod, DensityValue};
pub use error::{Error, Result};
pub use identities::{
    correlation_F, correlation_F_by_quadrature, delta_sequence, j_by_talbot, j_closed_case_a,
    j_closed_case_b, j_closed_case_c, j_integral, m_convolution_lhs, n_convolution_lhs, ClosedCase,
    CorrelationParams, DeltaSequence,
};
pub use kernels::{m_kernel, n_kernel, KernelKind, KernelSpec};
pub use laplace::{complex_power, forward_laplace, talbot_inverse, TalbotConfig};
pub use order::RationalOrder;
pub use quadrature::QuadratureConfig;
pub use report::{ErrorMetric, ParamValue, VerificationReport};
pub use suites::{run_suite, Suite};
pub use transforms::{
    bar_transform, catalog, catalog_entry, tilde_transform, verify_theorem1, FnOriginal, Growth,
    LaplacePair, Original, Theorem1Variant, TransformKind,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/density.md")]
    mod density {}
    #[doc = include_str!("../../../book/src/kernels-transforms.md")]
    mod kernels_transforms {}
    #[doc = include_str!("../../../book/src/laplace-numeric.md")]
    mod laplace_numeric {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/special.md")]
    mod special {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
