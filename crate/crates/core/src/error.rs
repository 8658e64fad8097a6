use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |X - X*| = {defect:e}")]
    NonHermitianInput { defect: f64 },

    #[error("matrix is not unitary: max |UU* - I| = {defect:e}")]
    NonUnitary { defect: f64 },

    #[error("eigendecomposition did not converge")]
    EigFailure,

    #[error("spectrum is not positive: smallest {min:e}, largest {max:e}")]
    NonPositiveSpectrum { min: f64, max: f64 },

    #[error("order {k} out of range 1..={n}")]
    BadOrder { k: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("weight {0} outside [0, 1]")]
    InvalidWeight(f64),

    #[error("numerical breakdown: {0}")]
    NumericBreakdown(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("negative entry {0:e} in log-majorization input")]
    NegativeEntry(f64),

    #[error("entry {0:e} too small for log-space comparison")]
    UnderflowEntry(f64),

    #[error("non-finite value in input")]
    NonFinite,

    #[error("spectrum has imaginary part {0:e}")]
    NonrealSpectrum(f64),

    #[error("exponent s = {s} exceeds the admissible bound {bound}")]
    SOutOfRange { s: f64, bound: f64 },

    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
