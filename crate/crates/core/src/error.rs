use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: a Fock space needs at least 2 levels")]
    InvalidDimension(usize),
    #[error("invalid space: dimension {0} must be even")]
    OddDimension(usize),
    #[error("invalid exponent l = {0}: must be at least 1")]
    InvalidExponent(u32),
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("non-finite value at level {0}")]
    NonFinite(usize),
    #[error("singular f: f({0}) = 0")]
    SingularF(usize),
    #[error("expected a pure Grassmann number, got body {0}")]
    NotGrassmann(num_complex::Complex64),
    #[error("invalid quadrature order: radial {radial}, angular {angular}")]
    InvalidGrid { radial: usize, angular: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
