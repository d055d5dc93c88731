use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("repeated evaluation point {0}")]
    RepeatedPoint(String),
    #[error("expected {expected} evaluation points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("negative tolerance")]
    NegativeTolerance,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("precision of {0} digits exceeds double precision (max 15)")]
    Precision(u32),
    #[error("kernel basis is empty")]
    EmptyBasis,
    #[error("not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("l not generic for c0")]
    LNotGeneric,
    #[error("p not generic")]
    PNotGeneric,
    #[error("root at infinity — choose another l")]
    RootAtInfinity,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
