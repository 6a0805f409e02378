use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |m[j][k] - conj(m[k][j])| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("trace {trace} differs from 1")]
    TraceNotUnit { trace: f64 },

    #[error("probability `{name}` = {value} lies outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not unitary: max |u u^dagger - I| = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("Kraus operators are not trace preserving: max |sum V^dagger V - I| = {residual:e}")]
    IncompleteKraus { residual: f64 },

    #[error("invalid mixture weights: {reason}")]
    InvalidWeights { reason: String },

    #[error("affine map has imaginary residue {residual:e}")]
    ImaginaryResidue { residual: f64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
