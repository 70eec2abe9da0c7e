//! Numerical tolerances shared across the crate.
//!
//! Every threshold used by a validation or a verdict lives here so the
//! acceptance tests and the CLI report against the same numbers.

/// Hermiticity check on inputs, relative to the largest entry.
pub const HERMITIAN_REL: f64 = 1e-10;

/// Density-matrix trace and eigenvalue validation.
pub const DENSITY: f64 = 1e-10;

/// Kraus completeness `sum K^dag K = I` and unitarity.
pub const TRACE_PRESERVING: f64 = 1e-10;

/// Projector idempotence, orthogonality and completeness.
pub const PROJECTOR: f64 = 1e-10;

/// Allowed imaginary residue of an expectation value of a Hermitian observable.
pub const IMAGINARY_RESIDUE: f64 = 1e-10;

/// Negativity values in `[-NEGATIVITY_CLAMP, 0)` are reported as exactly zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-12;

/// Smallest eigenvalue still counted as positive semi-definite.
pub const PSD_EIGENVALUE: f64 = 1e-10;

/// Lüders probabilities in `[-PROBABILITY_CLAMP, 0)` clamp to zero; below is an error.
pub const PROBABILITY_CLAMP: f64 = 1e-12;

/// Agreement required between two independent evaluation routes.
pub const DUAL_PATH: f64 = 1e-12;

/// An NSIT condition whose deviation is at most this is reported satisfied.
pub const NSIT_SATISFIED: f64 = 1e-9;

/// LGI variants are flagged violated above `1 + LGI_VIOLATION`.
pub const LGI_VIOLATION: f64 = 1e-10;

/// Bloch vectors must have unit norm to this tolerance.
pub const UNIT_VECTOR: f64 = 1e-10;

/// Eigenvalue gap below which observable eigenvalues share a projector.
pub const EIGEN_CLUSTER_GAP: f64 = 1e-8;

/// Jacobi convergence: off-diagonal Frobenius mass relative to the input norm.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
