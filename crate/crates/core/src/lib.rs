//! Temporal correlations of qubit systems through pseudo-density matrices.
//!
//! The crate builds PDMs from an initial state and a sequence of channels,
//! evaluates Margenau-Hill quasiprobabilities and their Lüders counterparts,
//! and reports signatures of temporal nonclassicality.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod pdm;
pub mod quasiprob;
pub mod sampling;
pub mod tol;
pub mod witness;

pub use channels::{ChoiMatrix, QuantumChannel};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEigenDecomposition, C64};
pub use pdm::{CorrelationMap, PauliString, Pdm};
