//! Dense complex matrices and the Hermitian eigensolver.
//!
//! Matrices are square and stored row-major. Tensor products put the first
//! factor in the most significant position, so for time-ordered operators
//! the earliest step is the leftmost factor.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, checking shape and finiteness.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: pos / dim, col: pos % dim });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from row-major entries, inferring the side length.
    pub fn from_entries(data: Vec<C64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::NotSquare { len: data.len() });
        }
        Self::new(dim, data)
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(dim, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { C64::new(diag[i], 0.0) } else { ZERO })
    }

    /// The projector `|v><v|` (not normalized).
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    /// Matrix unit `|i><j|`.
    pub fn unit(dim: usize, row: usize, col: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == row && j == col { ONE } else { ZERO })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    /// Largest entry modulus. Used as the matrix norm throughout the crate.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - self^dag`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Hermitian up to `rel_tol` relative to the largest entry.
    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermitian_deviation() <= rel_tol * self.max_abs().max(f64::MIN_POSITIVE)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }

    /// `self * other`, checking dimensions.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(self * other)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (row, col): (usize, usize)) -> &C64 {
        &self.data[row * self.dim + col]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

fn check_same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    Ok(())
}

/// Pauli matrix by index: 0 = I, 1 = X, 2 = Y, 3 = Z.
pub fn pauli(index: u8) -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    let data = match index {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -i, i, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index {index} out of range"),
    };
    ComplexMatrix { dim: 2, data: data.to_vec() }
}

/// `r . sigma` for a real 3-vector.
pub fn bloch_observable(r: [f64; 3]) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(2);
    for (k, &rk) in r.iter().enumerate() {
        acc = &acc + &pauli(k as u8 + 1).scale_real(rk);
    }
    acc
}

/// Kronecker product; `a` is the most significant factor.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut data = vec![ZERO; n * n];
    for ai in 0..na {
        for aj in 0..na {
            let s = a.data[ai * na + aj];
            for bi in 0..nb {
                let row = (ai * nb + bi) * n + aj * nb;
                for bj in 0..nb {
                    data[row + bj] = s * b.data[bi * nb + bj];
                }
            }
        }
    }
    ComplexMatrix { dim: n, data }
}

/// Left-to-right Kronecker product of a nonempty list.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    let mut iter = factors.into_iter();
    let first = iter.next().expect("tensor_all needs at least one factor").clone();
    iter.fold(first, |acc, m| tensor_product(&acc, m))
}

/// `a b + b a`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_same_dim(a, b)?;
    Ok(&(a * b) + &(b * a))
}

/// Splits flat indices into per-factor digits, most significant first.
struct FactorLayout {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl FactorLayout {
    fn new(dims: &[usize], total: usize) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidFactor(format!("bad factor dimensions {dims:?}")));
        }
        let product: usize = dims.iter().product();
        if product != total {
            return Err(Error::DimensionMismatch { expected: total, found: product });
        }
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Ok(Self { dims: dims.to_vec(), strides })
    }

    #[inline]
    fn digit(&self, index: usize, factor: usize) -> usize {
        (index / self.strides[factor]) % self.dims[factor]
    }

    fn check_factor(&self, factor: usize) -> Result<()> {
        if factor >= self.dims.len() {
            return Err(Error::InvalidFactor(format!("factor {factor} out of range for {} factors", self.dims.len())));
        }
        Ok(())
    }
}

/// Traces out the listed factors, keeping the rest in their original order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], traced: &[usize]) -> Result<ComplexMatrix> {
    let layout = FactorLayout::new(dims, m.dim)?;
    let mut is_traced = vec![false; dims.len()];
    for &t in traced {
        layout.check_factor(t)?;
        if is_traced[t] {
            return Err(Error::InvalidFactor(format!("factor {t} listed twice")));
        }
        is_traced[t] = true;
    }

    // Split every flat index into (kept index, traced index).
    let split: Vec<(usize, usize)> = (0..m.dim)
        .map(|idx| {
            let (mut kept, mut gone) = (0, 0);
            for (k, &d) in dims.iter().enumerate() {
                let digit = layout.digit(idx, k);
                if is_traced[k] {
                    gone = gone * d + digit;
                } else {
                    kept = kept * d + digit;
                }
            }
            (kept, gone)
        })
        .collect();

    let out_dim: usize = dims.iter().zip(&is_traced).filter(|(_, &t)| !t).map(|(d, _)| d).product();
    let mut data = vec![ZERO; out_dim * out_dim];
    for (i, &(ki, ti)) in split.iter().enumerate() {
        for (j, &(kj, tj)) in split.iter().enumerate() {
            if ti == tj {
                data[ki * out_dim + kj] += m.data[i * m.dim + j];
            }
        }
    }
    Ok(ComplexMatrix { dim: out_dim, data })
}

/// Transposes the given tensor factor only.
pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], factor: usize) -> Result<ComplexMatrix> {
    let layout = FactorLayout::new(dims, m.dim)?;
    layout.check_factor(factor)?;
    let stride = layout.strides[factor];
    Ok(ComplexMatrix::from_fn(m.dim, |i, j| {
        let di = layout.digit(i, factor);
        let dj = layout.digit(j, factor);
        let src_i = i - di * stride + dj * stride;
        let src_j = j - dj * stride + di * stride;
        m.get(src_i, src_j)
    }))
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl HermitianEigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary whose columns are the eigenvectors, in eigenvalue order.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty")
    }

    /// `V diag(lambda) V^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let scaled = ComplexMatrix::from_fn(v.dim(), |i, j| v.get(i, j) * self.eigenvalues[j]);
        &scaled * &v.adjoint()
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigenDecomposition> {
    let scale = m.max_abs();
    let dev = m.hermitian_deviation();
    if dev > tol::HERMITIAN_REL * scale {
        return Err(Error::NotHermitian(dev));
    }

    let n = m.dim;
    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            C64::new(m.get(i, i).re, 0.0)
        } else {
            (m.get(i, j) + m.get(j, i).conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol::JACOBI_OFF_DIAGONAL * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == tol::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_diagonal: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let raw: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    let mut columns: Vec<(f64, Vec<C64>)> =
        raw.into_iter().enumerate().map(|(k, lambda)| (lambda, fix_phase(v.column(k)))).collect();
    columns.sort_by(|(la, va), (lb, vb)| la.total_cmp(lb).then_with(|| lex_cmp(va, vb)));

    let eigenvalues: Vec<f64> = columns.iter().map(|(l, _)| *l).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| columns[j].1[i]);
    Ok(HermitianEigenDecomposition { eigenvalues, eigenvectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Zeroes `a[p][q]` with the unitary `U = Phase * Rotation` and updates `a <- U^dag a U`, `v <- v U`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim;
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // Below this the rotation angle underflows relative to the diagonal.
    if r <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a.data[p * n + q] = ZERO;
        a.data[q * n + p] = ZERO;
        return;
    }
    let phase = apq / r; // e^{i phi}
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = phase.conj(); // e^{-i phi}

    // Block of U on (p, q): [[c, s], [-s e, c e]].
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -e * s;
    let u_qq = e * c;

    // a <- a U (columns p, q)
    for k in 0..n {
        let akp = a.data[k * n + p];
        let akq = a.data[k * n + q];
        a.data[k * n + p] = akp * u_pp + akq * u_qp;
        a.data[k * n + q] = akp * u_pq + akq * u_qq;
    }
    // a <- U^dag a (rows p, q)
    for k in 0..n {
        let apk = a.data[p * n + k];
        let aqk = a.data[q * n + k];
        a.data[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a.data[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a.data[p * n + q] = ZERO;
    a.data[q * n + p] = ZERO;
    a.data[p * n + p] = C64::new(app - t * r, 0.0);
    a.data[q * n + q] = C64::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = vkp * u_pp + vkq * u_qp;
        v.data[k * n + q] = vkp * u_pq + vkq * u_qq;
    }
}

/// Rotates the vector so its first non-negligible component is real positive.
fn fix_phase(mut col: Vec<C64>) -> Vec<C64> {
    if let Some(lead) = col.iter().copied().find(|z| z.norm() > 1e-8) {
        let rot = lead.conj() / lead.norm();
        for z in &mut col {
            *z *= rot;
        }
    }
    col
}

fn lex_cmp(a: &[C64], b: &[C64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = y.re.total_cmp(&x.re).then_with(|| y.im.total_cmp(&x.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(m)?;
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_zz_is_diagonal() {
        let zz = tensor_product(&pauli(3), &pauli(3));
        assert_eq!(zz, ComplexMatrix::from_diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn tensor_ket0_with_mixed() {
        let ket0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let mixed = ComplexMatrix::identity(2).scale_real(0.5);
        let got = tensor_product(&ket0, &mixed);
        assert_eq!(got, ComplexMatrix::from_diagonal(&[0.5, 0.5, 0.0, 0.0]));
    }

    #[test]
    fn tensor_block_layout() {
        let a = ComplexMatrix::from_real(2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let k = tensor_product(&a, &b);
        // block (0,1) is a[0][1] * b
        assert_eq!(k.get(0, 3), c(2.0, 0.0));
        assert_eq!(k.get(1, 2), c(2.0, 0.0));
        assert_eq!(k.get(2, 1), c(3.0, 0.0));
        assert_eq!(k.get(3, 3), c(0.0, 0.0));
    }

    #[test]
    fn anticommutator_cases() {
        let x = pauli(1);
        let y = pauli(2);
        let z = pauli(3);
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(anticommutator(&i2, &x).unwrap(), x.scale_real(2.0));
        assert!(anticommutator(&x, &y).unwrap().max_abs() < 1e-15);
        assert_eq!(anticommutator(&z, &z).unwrap(), i2.scale_real(2.0));
        assert!(matches!(anticommutator(&x, &ComplexMatrix::identity(4)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = ComplexMatrix::from_fn(2, |i, j| c(i as f64 + 1.0, j as f64));
        let b = ComplexMatrix::from_diagonal(&[0.25, 0.5, 1.0]);
        let ab = tensor_product(&a, &b);
        let got = partial_trace(&ab, &[2, 3], &[1]).unwrap();
        assert!(got.max_abs_diff(&a.scale_real(1.75)) < 1e-15);
        let got = partial_trace(&ab, &[2, 3], &[0]).unwrap();
        assert!(got.max_abs_diff(&b.scale(a.trace())) < 1e-15);
    }

    #[test]
    fn partial_trace_all_factors_is_trace() {
        let m = ComplexMatrix::from_fn(8, |i, j| c((i * 8 + j) as f64, (i as f64) - (j as f64)));
        let t = partial_trace(&m, &[2, 2, 2], &[0, 1, 2]).unwrap();
        assert_eq!(t.dim(), 1);
        assert!((t.get(0, 0) - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(partial_trace(&m, &[2, 3], &[0]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(partial_trace(&m, &[2, 2], &[2]), Err(Error::InvalidFactor(_))));
        assert!(matches!(partial_trace(&m, &[2, 2], &[1, 1]), Err(Error::InvalidFactor(_))));
    }

    #[test]
    fn partial_transpose_swaps_digit() {
        // |01><10| -> partial transpose on factor 1 -> |00><11|
        let m = ComplexMatrix::unit(4, 1, 2);
        let pt = partial_transpose(&m, &[2, 2], 1).unwrap();
        assert_eq!(pt, ComplexMatrix::unit(4, 0, 3));
        let pt0 = partial_transpose(&m, &[2, 2], 0).unwrap();
        assert_eq!(pt0, ComplexMatrix::unit(4, 3, 0));
    }

    #[test]
    fn eig_of_sigma_z() {
        let eig = hermitian_eig(&pauli(3)).unwrap();
        assert_eq!(eig.eigenvalues(), &[-1.0, 1.0]);
        assert_eq!(eig.eigenvector(0), vec![c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn eig_of_sigma_y_has_phase_fixed_vectors() {
        let eig = hermitian_eig(&pauli(2)).unwrap();
        assert!((eig.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues()[1] - 1.0).abs() < 1e-14);
        for k in 0..2 {
            let v = eig.eigenvector(k);
            assert!(v[0].im.abs() < 1e-15 && v[0].re > 0.0);
        }
        assert!(eig.reconstruct().max_abs_diff(&pauli(2)) < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eig_of_zero_matrix() {
        let eig = hermitian_eig(&ComplexMatrix::zeros(3)).unwrap();
        assert_eq!(eig.eigenvalues(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn trace_norm_cases() {
        assert_eq!(trace_norm(&ComplexMatrix::identity(2)).unwrap(), 2.0);
        let rho = ComplexMatrix::from_real(2, &[0.75, 0.25, 0.25, 0.25]).unwrap();
        assert!((trace_norm(&rho).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(ComplexMatrix::new(0, vec![]), Err(Error::EmptyMatrix)));
        assert!(matches!(ComplexMatrix::new(2, vec![c(0.0, 0.0); 3]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]), Err(Error::NonFinite { row: 0, col: 0 })));
        assert!(matches!(ComplexMatrix::from_entries(vec![c(0.0, 0.0); 3]), Err(Error::NotSquare { len: 3 })));
    }

    #[test]
    fn bloch_observable_matches_paulis() {
        let r = [0.6, 0.0, 0.8];
        let obs = bloch_observable(r);
        let expect = &pauli(1).scale_real(0.6) + &pauli(3).scale_real(0.8);
        assert!(obs.max_abs_diff(&expect) < 1e-15);
    }
}
