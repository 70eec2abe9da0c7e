//! Verdicts on temporal nonclassicality: macrorealism certificates, temporal
//! entanglement, CHSH and Leggett-Garg values.

use crate::error::{Error, Result};
use crate::linalg::{bloch_observable, hermitian_eig, partial_transpose, pauli, tensor_all, ComplexMatrix};
use crate::pdm::Pdm;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MrCertificate {
    /// PSD PDM: for every choice of projective measurements the Born-rule
    /// table is a joint probability distribution with the correct marginals.
    GuaranteedAllMeasurements,
    /// Not PSD. This alone does not show a violation.
    NotGuaranteed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TemporalEntanglement {
    EntangledByNegativity,
    EntangledByPPT,
    SeparablePPT2x2,
    PPTInconclusive,
}

pub type BlochVector = [f64; 3];

fn require_steps(r: &Pdm, allowed: &[usize], expected: &'static str) -> Result<()> {
    if allowed.contains(&r.steps()) {
        Ok(())
    } else {
        Err(Error::UnsupportedSteps { expected, found: r.steps() })
    }
}

fn require_single_qubit_steps(r: &Pdm) -> Result<()> {
    match r.step_dims().iter().find(|&&d| d != 2) {
        Some(&d) => Err(Error::DimensionMismatch { expected: 2, found: d }),
        None => Ok(()),
    }
}

fn require_unit(v: &BlochVector) -> Result<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tol::UNIT_VECTOR {
        Err(Error::NotUnitVector(norm))
    } else {
        Ok(())
    }
}

pub fn mr_certificate(r: &Pdm) -> Result<MrCertificate> {
    require_steps(r, &[2, 3], "2 or 3")?;
    Ok(if r.min_eigenvalue()? >= -tol::PSD_EIGENVALUE {
        MrCertificate::GuaranteedAllMeasurements
    } else {
        MrCertificate::NotGuaranteed
    })
}

/// Negativity first; for PSD two-step PDMs, the partial transpose on the later step.
pub fn temporal_entanglement(r: &Pdm) -> Result<TemporalEntanglement> {
    require_steps(r, &[2], "2")?;
    entanglement_verdict(r, r.negativity()? > 0.0)
}

fn entanglement_verdict(r: &Pdm, negative: bool) -> Result<TemporalEntanglement> {
    if negative {
        return Ok(TemporalEntanglement::EntangledByNegativity);
    }
    if r.steps() != 2 {
        return Ok(TemporalEntanglement::PPTInconclusive);
    }
    let pt = partial_transpose(r.matrix(), r.step_dims(), 1)?;
    Ok(if hermitian_eig(&pt)?.min_eigenvalue() < -tol::PSD_EIGENVALUE {
        TemporalEntanglement::EntangledByPPT
    } else if r.step_dims() == [2, 2] {
        TemporalEntanglement::SeparablePPT2x2
    } else {
        TemporalEntanglement::PPTInconclusive
    })
}

/// `T[i][j] = Tr[R (sigma_i (x) sigma_j)]` for `i, j` over x, y, z.
pub fn correlation_matrix(r: &Pdm) -> Result<[[f64; 3]; 3]> {
    require_steps(r, &[2], "2")?;
    require_single_qubit_steps(r)?;
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let op = tensor_all([&pauli(i as u8 + 1), &pauli(j as u8 + 1)]);
            *entry = r.expectation(&op)?;
        }
    }
    Ok(t)
}

fn bilinear(t: &[[f64; 3]; 3], a: &BlochVector, b: &BlochVector) -> f64 {
    (0..3).map(|i| (0..3).map(|j| a[i] * t[i][j] * b[j]).sum::<f64>()).sum()
}

/// `|<A1 B1> + <A1 B2> + <A2 B1> - <A2 B2>|` with `<A B> = Tr[R (a.sigma (x) b.sigma)]`.
pub fn chsh_value(r: &Pdm, a1: &BlochVector, a2: &BlochVector, b1: &BlochVector, b2: &BlochVector) -> Result<f64> {
    require_steps(r, &[2], "2")?;
    require_single_qubit_steps(r)?;
    for v in [a1, a2, b1, b2] {
        require_unit(v)?;
    }
    let corr =
        |a: &BlochVector, b: &BlochVector| r.expectation(&tensor_all([&bloch_observable(*a), &bloch_observable(*b)]));
    Ok((corr(a1, b1)? + corr(a1, b2)? + corr(a2, b1)? - corr(a2, b2)?).abs())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshSettings {
    pub a1: BlochVector,
    pub a2: BlochVector,
    pub b1: BlochVector,
    pub b2: BlochVector,
    /// `2 sqrt(lambda_1 + lambda_2)` from the two largest eigenvalues of `T^T T`.
    pub value: f64,
}

fn normalize(v: [f64; 3]) -> Option<BlochVector> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (n > 1e-12).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

fn cross(a: &BlochVector, b: &BlochVector) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn mat_vec(t: &[[f64; 3]; 3], v: &BlochVector) -> [f64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|j| t[i][j] * v[j]).sum())
}

/// Maximal CHSH value together with measurement directions attaining it.
pub fn chsh_optimal_settings(r: &Pdm) -> Result<ChshSettings> {
    let t = correlation_matrix(r)?;
    let ttt = ComplexMatrix::from_fn(3, |i, j| (0..3).map(|k| t[k][i] * t[k][j]).sum::<f64>().into());
    let eig = hermitian_eig(&ttt)?;
    let l1 = eig.eigenvalues()[2].max(0.0);
    let l2 = eig.eigenvalues()[1].max(0.0);
    let real = |k: usize| -> BlochVector {
        let v = eig.eigenvector(k);
        [v[0].re, v[1].re, v[2].re]
    };
    let (u1, u2) = (real(2), real(1));
    let total = l1 + l2;
    let (c, s) = if total > 0.0 { ((l1 / total).sqrt(), (l2 / total).sqrt()) } else { (1.0, 0.0) };
    let b1 = [0, 1, 2].map(|i| c * u1[i] + s * u2[i]);
    let b2 = [0, 1, 2].map(|i| c * u1[i] - s * u2[i]);
    // Image directions; fall back to an orthonormal pair when T annihilates u.
    let a1 = normalize(mat_vec(&t, &u1)).unwrap_or(u1);
    let a2 = normalize(mat_vec(&t, &u2))
        .or_else(|| normalize(cross(&a1, &u1)))
        .or_else(|| normalize(cross(&a1, &[1.0, 0.0, 0.0])))
        .or_else(|| normalize(cross(&a1, &[0.0, 1.0, 0.0])))
        .expect("some axis is not parallel to a1");
    Ok(ChshSettings { a1, a2, b1, b2, value: 2.0 * total.sqrt() })
}

pub fn chsh_max(r: &Pdm) -> Result<f64> {
    Ok(chsh_optimal_settings(r)?.value)
}

/// Evaluates the CHSH combination directly from `T` (no trace), used to cross-check settings.
pub fn chsh_from_correlations(t: &[[f64; 3]; 3], s: &ChshSettings) -> f64 {
    (bilinear(t, &s.a1, &s.b1) + bilinear(t, &s.a1, &s.b2) + bilinear(t, &s.a2, &s.b1) - bilinear(t, &s.a2, &s.b2))
        .abs()
}

/// Two-time correlations `(C01, C12, C02)` of the dichotomic observable `q.sigma`.
pub fn lgi_correlations(r: &Pdm, q: &BlochVector) -> Result<[f64; 3]> {
    require_steps(r, &[3], "3")?;
    require_single_qubit_steps(r)?;
    require_unit(q)?;
    let obs = bloch_observable(*q);
    let id = ComplexMatrix::identity(2);
    let c01 = r.expectation(&tensor_all([&obs, &obs, &id]))?;
    let c12 = r.expectation(&tensor_all([&id, &obs, &obs]))?;
    let c02 = r.expectation(&tensor_all([&obs, &id, &obs]))?;
    Ok([c01, c12, c02])
}

/// `K3 = C01 + C12 - C02`.
pub fn lgi_k3(r: &Pdm, q: &BlochVector) -> Result<f64> {
    let [c01, c12, c02] = lgi_correlations(r, q)?;
    Ok(c01 + c12 - c02)
}

/// Sign choice in `s1 C01 + s2 C12 - s1 s2 C02 <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LgiVariant {
    pub s1: i8,
    pub s2: i8,
}

impl LgiVariant {
    pub const ALL: [LgiVariant; 4] = [
        LgiVariant { s1: 1, s2: 1 },
        LgiVariant { s1: 1, s2: -1 },
        LgiVariant { s1: -1, s2: 1 },
        LgiVariant { s1: -1, s2: -1 },
    ];

    pub fn label(self) -> &'static str {
        match (self.s1, self.s2) {
            (1, 1) => "pp",
            (1, _) => "pm",
            (_, 1) => "mp",
            _ => "mm",
        }
    }

    pub fn evaluate(self, [c01, c12, c02]: [f64; 3]) -> f64 {
        let (s1, s2) = (f64::from(self.s1), f64::from(self.s2));
        s1 * c01 + s2 * c12 - s1 * s2 * c02
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LgiValue {
    pub variant: LgiVariant,
    pub value: f64,
    pub violated: bool,
}

pub fn lgi_full_class(r: &Pdm, q: &BlochVector) -> Result<Vec<LgiValue>> {
    let c = lgi_correlations(r, q)?;
    Ok(LgiVariant::ALL
        .iter()
        .map(|&variant| {
            let value = variant.evaluate(c);
            LgiValue { variant, value, violated: value > 1.0 + tol::LGI_VIOLATION }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonclassicalityReport {
    pub negativity: f64,
    pub psd: bool,
    pub mr_certificate: MrCertificate,
    pub entanglement: TemporalEntanglement,
    /// Present for two-step single-qubit PDMs.
    pub chsh_max: Option<f64>,
    /// Present for three-step single-qubit PDMs when an LGI axis is given.
    pub lgi_values: Option<Vec<LgiValue>>,
}

/// Collects every verdict for one PDM. The PSD decision uses the eigenvalue
/// tolerance and the reported negativity is zero exactly when the PDM is PSD.
pub fn nonclassicality_report(r: &Pdm, lgi_axis: Option<&BlochVector>) -> Result<NonclassicalityReport> {
    require_steps(r, &[2, 3], "2 or 3")?;
    let eig = r.eigen()?;
    let psd = eig.min_eigenvalue() >= -tol::PSD_EIGENVALUE;
    let negativity = if psd { 0.0 } else { crate::pdm::negativity_from_eigenvalues(eig.eigenvalues()) };
    let mr_certificate = if psd { MrCertificate::GuaranteedAllMeasurements } else { MrCertificate::NotGuaranteed };
    let entanglement = entanglement_verdict(r, negativity > 0.0)?;
    let single_qubit = r.step_dims().iter().all(|&d| d == 2);
    let chsh_max = if r.steps() == 2 && single_qubit { Some(chsh_max(r)?) } else { None };
    let lgi_values = match lgi_axis {
        Some(q) if r.steps() == 3 => Some(lgi_full_class(r, q)?),
        _ => None,
    };
    Ok(NonclassicalityReport { negativity, psd, mr_certificate, entanglement, chsh_max, lgi_values })
}
