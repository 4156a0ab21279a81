use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Hilbert dimension {0}: must be a positive odd integer")]
    InvalidDimension(usize),

    #[error("dimension {0} not supported here: the 1/sqrt(N-1) normalization needs N >= 3")]
    SingularNormalization(usize),

    #[error("index {index} outside the symmetric range of dimension {dim}")]
    IndexOutOfRange { index: i64, dim: usize },

    #[error("real coordinate {value} outside the symmetric range of dimension {dim}")]
    CoordinateOutOfRange { value: f64, dim: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("Wigner transform produced imaginary residue {0}")]
    ImaginaryResidue(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("excess undefined for a distribution with zero sigma")]
    ZeroSigma,

    #[error("empty series")]
    EmptySeries,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
