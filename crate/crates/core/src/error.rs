use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix data has {len} entries, which is not a perfect square")]
    NotSquare { len: usize },

    #[error("matrix dimension must be positive")]
    EmptyMatrix,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("invalid tensor factor: {0}")]
    InvalidFactor(String),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("Kraus operators are not trace preserving (max deviation {0:e})")]
    NotTracePreserving(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("channel needs at least one Kraus operator")]
    EmptyKraus,

    #[error("parameter `{name}` = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("dimension {0} is not a power of two")]
    NotQubitDimension(usize),

    #[error("invalid pseudo-density matrix: {0}")]
    InvalidPdm(String),

    #[error("invalid Pauli index {0}; expected 0..=3")]
    InvalidPauliIndex(u8),

    #[error("correlation table is incomplete: {0}")]
    IncompleteCorrelations(String),

    #[error("all-identity correlation must equal 1, found {0}")]
    Normalization(f64),

    #[error("expectation value has imaginary residue {0:e}")]
    ResidualImaginary(f64),

    #[error("invalid projective measurement: {0}")]
    InvalidMeasurement(String),

    #[error("operation needs {expected} time steps, PDM has {found}")]
    UnsupportedSteps { expected: &'static str, found: usize },

    #[error("Bloch vector is not a unit vector (norm {0})")]
    NotUnitVector(f64),

    #[error("step selection is empty")]
    EmptySelection,

    #[error("step index {index} out of range for {steps} steps")]
    StepOutOfRange { index: usize, steps: usize },

    #[error("Lüders probability {0:e} is negative beyond tolerance")]
    NegativeProbability(f64),

    #[error("internal consistency check `{check}` failed (deviation {deviation:e})")]
    Inconsistent { check: &'static str, deviation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
