use thiserror::Error;

/// Errors raised by kernel construction, closed-form evaluation and the
/// numerical oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("single-mode factor does not converge: |nu| = {0} >= 1")]
    NonConvergent(f64),

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(&'static str),

    #[error("product-geometric ansatz has complex roots (u = {u}, v = {v}, u^2 - 4v = {})", u * u - 4.0 * v)]
    ComplexRoots { u: f64, v: f64 },

    #[error("condition not met: {0}")]
    ConditionNotMet(String),

    #[error("purification parameter z = {0} is negative; sqrt(z) is undefined")]
    NegativeZ(f64),

    #[error("matrix dimension {dim} exceeds the dense limit {limit}")]
    ResourceLimit { dim: usize, limit: usize },

    #[error("eigendecomposition failed: {0}")]
    EigFailure(String),

    #[error("spectrum has imaginary residue {residue:e} above threshold {threshold:e}")]
    ImaginarySpectrum { residue: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
