//! Quantum channels in Kraus form and their Choi matrices.
//!
//! The Choi matrix uses the transposed-reference convention
//! `M = sum_ij (|i><j|)^T (x) E(|i><j|)`, reference factor first. With it the
//! channel acts as `E(s) = Tr_R[(s (x) I) M]`, and the identity channel maps
//! to the SWAP operator.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, partial_trace, pauli, tensor_product, ComplexMatrix, C64};
use crate::tol;

/// A CPTP map on a `dim`-dimensional system, carried by its Kraus operators.
#[derive(Clone, Debug)]
pub struct QuantumChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    choi: OnceLock<ChoiMatrix>,
}

/// Choi matrix on `reference (x) output`.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    matrix: ComplexMatrix,
    dim_in: usize,
    dim_out: usize,
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// `E(sigma) = Tr_R[(sigma (x) I) M]`.
    pub fn apply(&self, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
        if sigma.dim() != self.dim_in {
            return Err(Error::DimensionMismatch { expected: self.dim_in, found: sigma.dim() });
        }
        let lifted = tensor_product(sigma, &ComplexMatrix::identity(self.dim_out));
        partial_trace(&(&lifted * &self.matrix), &[self.dim_in, self.dim_out], &[0])
    }
}

impl QuantumChannel {
    /// Builds a channel from Kraus operators, checking `sum K^dag K = I`.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let dim = first.dim();
        let mut completeness = ComplexMatrix::zeros(dim);
        for k in &kraus {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: k.dim() });
            }
            completeness = &completeness + &(&k.adjoint() * k);
        }
        let dev = completeness.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > tol::TRACE_PRESERVING {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self { dim, kraus, choi: OnceLock::new() })
    }

    pub fn identity(dim: usize) -> Self {
        Self { dim, kraus: vec![ComplexMatrix::identity(dim)], choi: OnceLock::new() }
    }

    /// Qubit depolarizing channel `(1 - eta) rho + eta I / 2`.
    pub fn depolarizing(eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::OutOfRange { name: "eta", value: eta, range: "[0, 1]" });
        }
        let w0 = (1.0 - 0.75 * eta).sqrt();
        let w = (0.25 * eta).sqrt();
        let kraus =
            vec![pauli(0).scale_real(w0), pauli(1).scale_real(w), pauli(2).scale_real(w), pauli(3).scale_real(w)];
        Self::new(kraus)
    }

    /// Single-Kraus channel `rho -> U rho U^dag`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let dev = (&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(u.dim()));
        if dev > tol::TRACE_PRESERVING {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { dim: u.dim(), kraus: vec![u], choi: OnceLock::new() })
    }

    /// Evolution under `H = (Omega / 2) sigma_x` for a time `t`, given `omega_t = Omega t`.
    pub fn rabi(omega_t: f64) -> Result<Self> {
        let h = pauli(1).scale_real(0.5);
        Self::unitary(qubit_propagator(&h, omega_t)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// `sum_k K sigma K^dag`.
    pub fn apply(&self, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
        if sigma.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: sigma.dim() });
        }
        let mut out = ComplexMatrix::zeros(self.dim);
        for k in &self.kraus {
            out = &out + &(&(k * sigma) * &k.adjoint());
        }
        Ok(out)
    }

    /// Same action as [`apply`](Self::apply), routed through the Choi matrix.
    pub fn apply_via_choi(&self, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.choi().apply(sigma)
    }

    /// Choi matrix, computed on first use.
    pub fn choi(&self) -> &ChoiMatrix {
        self.choi.get_or_init(|| choi_from_kraus(self))
    }
}

/// `M = sum_ij (|i><j|)^T (x) E(|i><j|)` in the computational basis.
pub fn choi_from_kraus(channel: &QuantumChannel) -> ChoiMatrix {
    let d = channel.dim;
    let mut m = ComplexMatrix::zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            let unit = ComplexMatrix::unit(d, i, j);
            let image = channel.apply(&unit).expect("matrix unit has the channel dimension");
            m = &m + &tensor_product(&unit.transpose(), &image);
        }
    }
    ChoiMatrix { matrix: m, dim_in: d, dim_out: d }
}

/// Checks the Choi-level CPTP conditions; returns `(min eigenvalue, trace-preservation deviation)`.
pub fn choi_diagnostics(choi: &ChoiMatrix) -> Result<(f64, f64)> {
    let eig = hermitian_eig(choi.matrix())?;
    let reduced = partial_trace(choi.matrix(), &[choi.dim_in, choi.dim_out], &[1])?;
    let tp = reduced.max_abs_diff(&ComplexMatrix::identity(choi.dim_in));
    Ok((eig.min_eigenvalue(), tp))
}

/// `exp(-i H t)` for a 2x2 Hermitian `H`, by the closed form
/// `e^{-i h0 t} (cos(|h| t) I - i sin(|h| t) h.sigma / |h|)` with `H = h0 I + h.sigma`.
pub fn qubit_propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if h.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: h.dim() });
    }
    let dev = h.hermitian_deviation();
    if dev > tol::HERMITIAN_REL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    let coeff = |mu: u8| 0.5 * pauli(mu).trace_product(h).re;
    let h0 = coeff(0);
    let hv = [coeff(1), coeff(2), coeff(3)];
    let norm = (hv[0] * hv[0] + hv[1] * hv[1] + hv[2] * hv[2]).sqrt();
    let global = C64::new(0.0, -h0 * t).exp();
    let mut u = ComplexMatrix::identity(2).scale_real((norm * t).cos());
    if norm > 0.0 {
        let s = (norm * t).sin() / norm;
        for (k, &hk) in hv.iter().enumerate() {
            u = &u - &pauli(k as u8 + 1).scale(C64::new(0.0, s * hk));
        }
    }
    Ok(u.scale(global))
}
