use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    /// The request is well posed but outside what this library supports.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("series failed to converge within {terms} terms")]
    Convergence { terms: usize },

    #[error("overflow during series summation (partial sum magnitude {partial_sum:e})")]
    Overflow { partial_sum: f64 },

    /// Adaptive quadrature could not reach the requested tolerance. The last
    /// estimate and its error are kept for diagnostics.
    #[error(
        "integration did not converge: estimate {value:e} with error {abs_error:e} \
         after {subdivisions} subdivisions"
    )]
    Integration {
        value: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    #[error("integrand returned a non-finite value at t = {at:e}")]
    NonFinite { at: f64 },

    #[error("Laplace inversion failed: {0}")]
    Inversion(String),

    #[error("invalid rational order: {0}")]
    InvalidOrder(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
