//! Pseudo-density matrices over `m` time steps.
//!
//! A PDM lives on `H_0 (x) H_1 (x) ... (x) H_{m-1}` with the earliest step in
//! the most significant factor. Two-step PDMs come from a state and a channel,
//! `R01 = {rho (x) I, M01} / 2`; each further step is appended with
//! `R' = {R (x) I, I (x) ... (x) I (x) M} / 2`, where the Choi matrix `M` of the
//! new channel sits on the last two step factors.

use std::collections::BTreeMap;
use std::fmt;

use crate::channels::QuantumChannel;
use crate::error::{Error, Result};
use crate::linalg::{
    anticommutator, hermitian_eig, partial_trace, pauli, tensor_all, tensor_product, ComplexMatrix,
    HermitianEigenDecomposition,
};
use crate::tol;

/// Pauli string on the qubits of one time step: 0 = I, 1 = X, 2 = Y, 3 = Z.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<u8>);

impl PauliString {
    pub fn new(directions: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = directions.iter().find(|&&mu| mu > 3) {
            return Err(Error::InvalidPauliIndex(bad));
        }
        Ok(Self(directions))
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self(vec![0; n_qubits])
    }

    pub fn directions(&self) -> &[u8] {
        &self.0
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&mu| mu == 0)
    }

    pub fn matrix(&self) -> ComplexMatrix {
        tensor_all(self.0.iter().map(|&mu| pauli(mu)).collect::<Vec<_>>().iter())
    }

    /// All `4^n` strings in lexicographic order.
    pub fn all(n_qubits: usize) -> Vec<PauliString> {
        let count = 4usize.pow(n_qubits as u32);
        (0..count)
            .map(|mut code| {
                let mut dirs = vec![0u8; n_qubits];
                for slot in dirs.iter_mut().rev() {
                    *slot = (code % 4) as u8;
                    code /= 4;
                }
                PauliString(dirs)
            })
            .collect()
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [char; 4] = ['I', 'X', 'Y', 'Z'];
        let s: String = self.0.iter().map(|&mu| NAMES[mu as usize]).collect();
        write!(f, "{s}")
    }
}

/// Correlation coefficients `T` keyed by one Pauli string per step.
pub type CorrelationMap = BTreeMap<Vec<PauliString>, f64>;

/// Hermitian, unit-trace operator on the tensor product of per-step spaces.
#[derive(Clone, Debug)]
pub struct Pdm {
    matrix: ComplexMatrix,
    step_dims: Vec<usize>,
}

fn qubits_for(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotQubitDimension(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Checks that `rho` is a density matrix within the module tolerances.
pub fn validate_density_matrix(rho: &ComplexMatrix) -> Result<()> {
    let dev = rho.hermitian_deviation();
    if dev > tol::DENSITY {
        return Err(Error::NotDensityMatrix(format!("not Hermitian (deviation {dev:e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > tol::DENSITY || tr.im.abs() > tol::DENSITY {
        return Err(Error::NotDensityMatrix(format!("trace {} differs from 1", tr.re)));
    }
    let min = hermitian_eig(rho)?.min_eigenvalue();
    if min < -tol::DENSITY {
        return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

impl Pdm {
    /// Wraps a matrix as a PDM, checking Hermiticity, unit trace and qubit step dimensions.
    pub fn new(matrix: ComplexMatrix, step_dims: Vec<usize>) -> Result<Self> {
        if step_dims.is_empty() {
            return Err(Error::InvalidPdm("no time steps".into()));
        }
        for &d in &step_dims {
            qubits_for(d)?;
        }
        let product: usize = step_dims.iter().product();
        if product != matrix.dim() {
            return Err(Error::DimensionMismatch { expected: product, found: matrix.dim() });
        }
        let dev = matrix.hermitian_deviation();
        if dev > tol::HERMITIAN_REL * matrix.max_abs().max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::DENSITY || tr.im.abs() > tol::DENSITY {
            return Err(Error::InvalidPdm(format!("trace {} differs from 1", tr.re)));
        }
        Ok(Self { matrix, step_dims })
    }

    /// `R01 = {rho (x) I, M} / 2`.
    pub fn two_step(rho: &ComplexMatrix, channel: &QuantumChannel) -> Result<Self> {
        if rho.dim() != channel.dim() {
            return Err(Error::DimensionMismatch { expected: channel.dim(), found: rho.dim() });
        }
        validate_density_matrix(rho)?;
        let d = rho.dim();
        let lifted = tensor_product(rho, &ComplexMatrix::identity(d));
        let r = anticommutator(&lifted, channel.choi().matrix())?.scale_real(0.5);
        Self::new(r, vec![d, d])
    }

    /// Appends one time step reached from the current last step through `channel`.
    pub fn extend(&self, channel: &QuantumChannel) -> Result<Self> {
        let last = *self.step_dims.last().expect("nonempty");
        if channel.dim() != last {
            return Err(Error::DimensionMismatch { expected: last, found: channel.dim() });
        }
        let new_dim = channel.dim();
        let padded = tensor_product(&self.matrix, &ComplexMatrix::identity(new_dim));
        let prefix = self.matrix.dim() / last;
        let choi = tensor_product(&ComplexMatrix::identity(prefix), channel.choi().matrix());
        let r = anticommutator(&padded, &choi)?.scale_real(0.5);
        let mut dims = self.step_dims.clone();
        dims.push(new_dim);
        Self::new(r, dims)
    }

    /// Builds a PDM from a full table of Pauli correlations,
    /// `R = 2^{-nm} sum_mu T^mu sigma_mu0 (x) ... (x) sigma_mu(m-1)`.
    pub fn from_correlations(table: &CorrelationMap, n_qubits: usize, steps: usize) -> Result<Self> {
        if n_qubits == 0 || steps == 0 {
            return Err(Error::InvalidPdm("need at least one qubit and one step".into()));
        }
        let strings = PauliString::all(n_qubits);
        let expected = strings.len().pow(steps as u32);
        if table.len() != expected {
            return Err(Error::IncompleteCorrelations(format!("{} entries, expected {expected}", table.len())));
        }
        let norm_key = vec![PauliString::identity(n_qubits); steps];
        match table.get(&norm_key) {
            Some(&t) if (t - 1.0).abs() <= 1e-12 => {}
            Some(&t) => return Err(Error::Normalization(t)),
            None => return Err(Error::IncompleteCorrelations("missing all-identity entry".into())),
        }

        let step_dim = 1usize << n_qubits;
        let total = step_dim.pow(steps as u32);
        let mut acc = ComplexMatrix::zeros(total);
        for (key, &t) in table {
            if key.len() != steps || key.iter().any(|s| s.n_qubits() != n_qubits) {
                return Err(Error::IncompleteCorrelations(format!("malformed key {key:?}")));
            }
            if !t.is_finite() {
                return Err(Error::IncompleteCorrelations(format!("non-finite value at {key:?}")));
            }
            if t == 0.0 {
                continue;
            }
            let op = tensor_all(key.iter().map(|s| s.matrix()).collect::<Vec<_>>().iter());
            acc = &acc + &op.scale_real(t);
        }
        Self::new(acc.scale_real(1.0 / total as f64), vec![step_dim; steps])
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn step_dims(&self) -> &[usize] {
        &self.step_dims
    }

    pub fn steps(&self) -> usize {
        self.step_dims.len()
    }

    /// Qubits per step, when all steps have the same size.
    pub fn qubits_per_step(&self) -> Option<usize> {
        let first = self.step_dims[0];
        if self.step_dims.iter().all(|&d| d == first) {
            qubits_for(first).ok()
        } else {
            None
        }
    }

    /// `Tr[(s_0 (x) ... (x) s_{m-1}) R]`.
    pub fn pauli_correlation(&self, strings: &[PauliString]) -> Result<f64> {
        if strings.len() != self.steps() {
            return Err(Error::DimensionMismatch { expected: self.steps(), found: strings.len() });
        }
        for (s, &d) in strings.iter().zip(&self.step_dims) {
            let n = qubits_for(d)?;
            if s.n_qubits() != n {
                return Err(Error::DimensionMismatch { expected: n, found: s.n_qubits() });
            }
        }
        let op = tensor_all(strings.iter().map(|s| s.matrix()).collect::<Vec<_>>().iter());
        self.expectation(&op)
    }

    /// `Tr[O R]` for a Hermitian operator `O` on the full space.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Result<f64> {
        if observable.dim() != self.matrix.dim() {
            return Err(Error::DimensionMismatch { expected: self.matrix.dim(), found: observable.dim() });
        }
        let value = observable.trace_product(&self.matrix);
        if value.im.abs() > tol::IMAGINARY_RESIDUE {
            return Err(Error::ResidualImaginary(value.im));
        }
        Ok(value.re)
    }

    /// Every coefficient `T` of the Pauli expansion. Requires equal qubit steps.
    pub fn correlations(&self) -> Result<CorrelationMap> {
        let n = self.qubits_per_step().ok_or_else(|| Error::InvalidPdm("steps have different sizes".into()))?;
        let strings = PauliString::all(n);
        let mut keys: Vec<Vec<PauliString>> = vec![vec![]];
        for _ in 0..self.steps() {
            keys = keys
                .into_iter()
                .flat_map(|prefix| {
                    strings.iter().map(move |s| {
                        let mut k = prefix.clone();
                        k.push(s.clone());
                        k
                    })
                })
                .collect();
        }
        keys.into_iter().map(|k| self.pauli_correlation(&k).map(|t| (k, t))).collect()
    }

    pub fn eigen(&self) -> Result<HermitianEigenDecomposition> {
        hermitian_eig(&self.matrix)
    }

    /// `f(R) = ||R||_1 - 1`, with small negative round-off reported as zero.
    pub fn negativity(&self) -> Result<f64> {
        let eig = self.eigen()?;
        Ok(negativity_from_eigenvalues(eig.eigenvalues()))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigen()?.min_eigenvalue())
    }

    /// Keeps the listed steps (in ascending order) and traces out the rest.
    pub fn marginal(&self, keep: &[usize]) -> Result<Pdm> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut kept = vec![false; self.steps()];
        for &k in keep {
            if k >= self.steps() {
                return Err(Error::StepOutOfRange { index: k, steps: self.steps() });
            }
            kept[k] = true;
        }
        let traced: Vec<usize> = (0..self.steps()).filter(|&k| !kept[k]).collect();
        let dims: Vec<usize> = (0..self.steps()).filter(|&k| kept[k]).map(|k| self.step_dims[k]).collect();
        let m = partial_trace(&self.matrix, &self.step_dims, &traced)?;
        Self::new(m, dims)
    }
}

/// Negativity from a spectrum: `sum |lambda| - 1`, clamped at zero within tolerance.
pub fn negativity_from_eigenvalues(eigenvalues: &[f64]) -> f64 {
    let f = eigenvalues.iter().map(|l| l.abs()).sum::<f64>() - 1.0;
    if f < tol::NEGATIVITY_CLAMP {
        0.0
    } else {
        f
    }
}
