//! Spatiotemporal Born-rule quasiprobabilities, Lüders probabilities and
//! their disturbance decomposition for two and three measurement times.

use crate::channels::QuantumChannel;
use crate::error::{Error, Result};
use crate::linalg::{bloch_observable, hermitian_eig, pauli, tensor_all, ComplexMatrix};
use crate::pdm::Pdm;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn pauli_index(self) -> u8 {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }

    pub fn unit_vector(self) -> [f64; 3] {
        match self {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
        }
    }
}

/// Complete set of orthogonal projectors on one time step.
#[derive(Clone, Debug)]
pub struct ProjectiveMeasurement {
    projectors: Vec<ComplexMatrix>,
}

impl ProjectiveMeasurement {
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let first = projectors.first().ok_or_else(|| Error::InvalidMeasurement("no projectors".into()))?;
        let dim = first.dim();
        let mut total = ComplexMatrix::zeros(dim);
        for (i, p) in projectors.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if p.hermitian_deviation() > tol::PROJECTOR {
                return Err(Error::InvalidMeasurement(format!("projector {i} is not Hermitian")));
            }
            let dev = (p * p).max_abs_diff(p);
            if dev > tol::PROJECTOR {
                return Err(Error::InvalidMeasurement(format!("projector {i} is not idempotent (deviation {dev:e})")));
            }
            for (j, q) in projectors.iter().enumerate().skip(i + 1) {
                let overlap = (p * q).max_abs();
                if overlap > tol::PROJECTOR {
                    return Err(Error::InvalidMeasurement(format!(
                        "projectors {i} and {j} are not orthogonal (overlap {overlap:e})"
                    )));
                }
            }
            total = &total + p;
        }
        let dev = total.max_abs_diff(&ComplexMatrix::identity(dim));
        if dev > tol::PROJECTOR {
            return Err(Error::InvalidMeasurement(format!(
                "projectors do not sum to the identity (deviation {dev:e})"
            )));
        }
        Ok(Self { projectors })
    }

    /// Eigenspace projectors of a Hermitian observable, largest eigenvalue first.
    /// Eigenvalues closer than the clustering gap share one projector.
    pub fn from_observable(observable: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(observable)?;
        let values = eig.eigenvalues();
        let dim = observable.dim();
        let mut projectors: Vec<ComplexMatrix> = Vec::new();
        let mut cluster_start = dim;
        // Walk from the top of the ascending spectrum downwards.
        for k in (0..dim).rev() {
            let v = eig.eigenvector(k);
            let outer = ComplexMatrix::outer(&v);
            let joins = cluster_start < dim && values[cluster_start] - values[k] <= tol::EIGEN_CLUSTER_GAP;
            if joins {
                let last = projectors.last_mut().expect("cluster open");
                *last = &*last + &outer;
            } else {
                projectors.push(outer);
                cluster_start = k;
            }
        }
        Self::new(projectors)
    }

    /// `{(I + sigma_a)/2, (I - sigma_a)/2}` for a Pauli axis.
    pub fn pauli_axis(axis: Axis) -> Self {
        Self::bloch_vector(axis.unit_vector()).expect("axis vectors are unit")
    }

    /// `{(I + r.sigma)/2, (I - r.sigma)/2}` for a unit Bloch vector `r`.
    pub fn bloch_vector(r: [f64; 3]) -> Result<Self> {
        let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::UNIT_VECTOR {
            return Err(Error::NotUnitVector(norm));
        }
        let id = ComplexMatrix::identity(2);
        let obs = bloch_observable(r);
        Ok(Self { projectors: vec![(&id + &obs).scale_real(0.5), (&id - &obs).scale_real(0.5)] })
    }

    /// Bloch measurement along polar angle `theta` and azimuth `phi`.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let r = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        Self::bloch_vector(r).expect("spherical angles give a unit vector")
    }

    /// Rank-one projectors onto the computational basis of a `dim`-dimensional space.
    pub fn computational(dim: usize) -> Self {
        Self { projectors: (0..dim).map(|i| ComplexMatrix::unit(dim, i, i)).collect() }
    }

    /// Product measurement on a composite step, outcomes ordered with the first factor most significant.
    pub fn product(parts: &[ProjectiveMeasurement]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidMeasurement("no factors".into()));
        }
        let mut projectors = vec![ComplexMatrix::identity(1)];
        for part in parts {
            projectors =
                projectors.iter().flat_map(|a| part.projectors.iter().map(move |b| tensor_all([a, b]))).collect();
        }
        Ok(Self { projectors })
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn outcomes(&self) -> usize {
        self.projectors.len()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn projector(&self, i: usize) -> &ComplexMatrix {
        &self.projectors[i]
    }
}

/// Real table over joint outcomes, stored row-major with the earliest step slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiDistribution {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl QuasiDistribution {
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if shape.is_empty() || n != values.len() {
            return Err(Error::DimensionMismatch { expected: n, found: values.len() });
        }
        Ok(Self { shape, values })
    }

    fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> Result<f64>) -> Result<Self> {
        let n: usize = shape.iter().product();
        let mut values = Vec::with_capacity(n);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..n {
            values.push(f(&idx)?);
            for axis in (0..shape.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < shape[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Ok(Self { shape, values })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.shape.len(), "index rank");
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "outcome index {i} out of range {n}");
            acc * n + i
        })
    }

    /// Panics on an out-of-range index.
    pub fn get(&self, index: &[usize]) -> f64 {
        self.values[self.offset(index)]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn abs_sum(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape, other.shape, "shape mismatch");
        self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::InvalidMeasurement("outcome tables have different shapes".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self { shape: self.shape.clone(), values })
    }

    /// Sums out every axis not listed in `keep` (listed in ascending order).
    pub fn marginalize(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        for (n, &k) in keep.iter().enumerate() {
            if k >= self.shape.len() {
                return Err(Error::StepOutOfRange { index: k, steps: self.shape.len() });
            }
            if n > 0 && keep[n - 1] >= k {
                return Err(Error::InvalidMeasurement("marginal axes must be ascending".into()));
            }
        }
        let shape: Vec<usize> = keep.iter().map(|&k| self.shape[k]).collect();
        let mut out = QuasiDistribution { values: vec![0.0; shape.iter().product()], shape };
        let mut idx = vec![0usize; self.shape.len()];
        for &v in &self.values {
            let sub: Vec<usize> = keep.iter().map(|&k| idx[k]).collect();
            let o = out.offset(&sub);
            out.values[o] += v;
            for axis in (0..self.shape.len()).rev() {
                idx[axis] += 1;
                if idx[axis] < self.shape[axis] {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Ok(out)
    }
}

fn expect_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn real_trace(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let z = a.trace_product(b);
    if z.im.abs() > tol::IMAGINARY_RESIDUE {
        return Err(Error::ResidualImaginary(z.im));
    }
    Ok(z.re)
}

fn clamp_probability(p: f64) -> Result<f64> {
    if p >= 0.0 {
        Ok(p)
    } else if p >= -tol::PROBABILITY_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeProbability(p))
    }
}

fn sandwich(p: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    &(p * x) * p
}

/// `P X P + (I - P) X (I - P)`.
pub fn dephase(p: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    let q = &ComplexMatrix::identity(p.dim()) - p;
    &sandwich(p, x) + &sandwich(&q, x)
}

fn check_two(
    rho: &ComplexMatrix,
    e: &QuantumChannel,
    m0: &ProjectiveMeasurement,
    m1: &ProjectiveMeasurement,
) -> Result<()> {
    expect_dim(e.dim(), rho.dim())?;
    expect_dim(rho.dim(), m0.dim())?;
    expect_dim(e.dim(), m1.dim())
}

/// `P01(i,j) = Tr[E(Pi_i rho Pi_i) Pi_j]`.
pub fn lueders_two(
    rho: &ComplexMatrix,
    channel: &QuantumChannel,
    m0: &ProjectiveMeasurement,
    m1: &ProjectiveMeasurement,
) -> Result<QuasiDistribution> {
    check_two(rho, channel, m0, m1)?;
    let evolved: Vec<ComplexMatrix> =
        m0.projectors().iter().map(|p| channel.apply(&sandwich(p, rho))).collect::<Result<_>>()?;
    QuasiDistribution::from_fn(vec![m0.outcomes(), m1.outcomes()], |ix| {
        clamp_probability(real_trace(&evolved[ix[0]], m1.projector(ix[1]))?)
    })
}

/// `Q01(i,j) = Tr[R01 (Pi_i (x) Pi_j)]`.
pub fn born_quasi_two(r01: &Pdm, m0: &ProjectiveMeasurement, m1: &ProjectiveMeasurement) -> Result<QuasiDistribution> {
    born_quasi_from_pdm(r01, &[m0, m1])
}

/// Margenau-Hill form `Tr[E({rho, Pi_i}) Pi_j] / 2`.
pub fn margenau_hill_two(
    rho: &ComplexMatrix,
    channel: &QuantumChannel,
    m0: &ProjectiveMeasurement,
    m1: &ProjectiveMeasurement,
) -> Result<QuasiDistribution> {
    check_two(rho, channel, m0, m1)?;
    let evolved: Vec<ComplexMatrix> = m0
        .projectors()
        .iter()
        .map(|p| channel.apply(&(&(rho * p) + &(p * rho)).scale_real(0.5)))
        .collect::<Result<_>>()?;
    QuasiDistribution::from_fn(vec![m0.outcomes(), m1.outcomes()], |ix| {
        real_trace(&evolved[ix[0]], m1.projector(ix[1]))
    })
}

/// `D01(i,j) = Tr[E(rho - rho_ibar) Pi_j] / 2`, cross-checked against `Q01 - P01`.
pub fn disturbance_two(
    rho: &ComplexMatrix,
    channel: &QuantumChannel,
    m0: &ProjectiveMeasurement,
    m1: &ProjectiveMeasurement,
) -> Result<QuasiDistribution> {
    check_two(rho, channel, m0, m1)?;
    let evolved: Vec<ComplexMatrix> = m0
        .projectors()
        .iter()
        .map(|p| channel.apply(&(rho - &dephase(p, rho)).scale_real(0.5)))
        .collect::<Result<_>>()?;
    let direct = QuasiDistribution::from_fn(vec![m0.outcomes(), m1.outcomes()], |ix| {
        real_trace(&evolved[ix[0]], m1.projector(ix[1]))
    })?;
    let q = margenau_hill_two(rho, channel, m0, m1)?;
    let p = lueders_two(rho, channel, m0, m1)?;
    let deviation = direct.max_abs_diff(&q.sub(&p)?);
    if deviation > tol::DUAL_PATH {
        return Err(Error::Inconsistent { check: "two-step disturbance equals Q - P", deviation });
    }
    Ok(direct)
}

/// `N01`, the sum of `|D01(i,j)|` over all outcome pairs.
pub fn nsit_quantifier_two(
    rho: &ComplexMatrix,
    channel: &QuantumChannel,
    m0: &ProjectiveMeasurement,
    m1: &ProjectiveMeasurement,
) -> Result<f64> {
    Ok(disturbance_two(rho, channel, m0, m1)?.abs_sum())
}

/// Largest deviation `|P1(j) - sum_i P01(i,j)|`, i.e. how far the first
/// measurement changes the statistics of the second.
pub fn nsit_deviation_two(
    rho: &ComplexMatrix,
    channel: &QuantumChannel,
    m0: &ProjectiveMeasurement,
    m1: &ProjectiveMeasurement,
) -> Result<f64> {
    check_two(rho, channel, m0, m1)?;
    let p01 = lueders_two(rho, channel, m0, m1)?.marginalize(&[1])?;
    let out = channel.apply(rho)?;
    let mut worst: f64 = 0.0;
    for (j, pj) in m1.projectors().iter().enumerate() {
        worst = worst.max((real_trace(&out, pj)? - p01.get(&[j])).abs());
    }
    Ok(worst)
}

fn born_quasi_from_pdm(r: &Pdm, ms: &[&ProjectiveMeasurement]) -> Result<QuasiDistribution> {
    if r.steps() != ms.len() {
        return Err(Error::UnsupportedSteps { expected: if ms.len() == 2 { "2" } else { "3" }, found: r.steps() });
    }
    for (m, &d) in ms.iter().zip(r.step_dims()) {
        expect_dim(d, m.dim())?;
    }
    let shape = ms.iter().map(|m| m.outcomes()).collect();
    QuasiDistribution::from_fn(shape, |ix| {
        let op = tensor_all(ix.iter().zip(ms).map(|(&i, m)| m.projector(i)));
        real_trace(&op, r.matrix())
    })
}

/// Initial state, two channels and three measurements.
#[derive(Clone, Copy, Debug)]
pub struct ThreeStep<'a> {
    pub rho: &'a ComplexMatrix,
    pub e1: &'a QuantumChannel,
    pub e2: &'a QuantumChannel,
    pub m0: &'a ProjectiveMeasurement,
    pub m1: &'a ProjectiveMeasurement,
    pub m2: &'a ProjectiveMeasurement,
}

impl ThreeStep<'_> {
    fn check(&self) -> Result<()> {
        expect_dim(self.e1.dim(), self.rho.dim())?;
        expect_dim(self.e1.dim(), self.e2.dim())?;
        expect_dim(self.rho.dim(), self.m0.dim())?;
        expect_dim(self.e1.dim(), self.m1.dim())?;
        expect_dim(self.e2.dim(), self.m2.dim())
    }

    fn shape(&self) -> Vec<usize> {
        vec![self.m0.outcomes(), self.m1.outcomes(), self.m2.outcomes()]
    }

    fn second_measured(&self, x: &ComplexMatrix) -> Result<Vec<f64>> {
        let out = self.e2.apply(x)?;
        self.m2.projectors().iter().map(|p| real_trace(&out, p)).collect()
    }
}

/// `Q012 = Tr[E2({E1({rho, Pi_i}), Pi_j}) Pi_k] / 4`.
pub fn born_quasi_three(s: &ThreeStep<'_>) -> Result<QuasiDistribution> {
    s.check()?;
    let mut values = Vec::with_capacity(s.shape().iter().product());
    for pi in s.m0.projectors() {
        let x = s.e1.apply(&(&(s.rho * pi) + &(pi * s.rho)))?;
        for pj in s.m1.projectors() {
            let y = (&(&x * pj) + &(pj * &x)).scale_real(0.25);
            values.extend(s.second_measured(&y)?);
        }
    }
    QuasiDistribution::new(s.shape(), values)
}

/// `Tr[R012 (Pi_i (x) Pi_j (x) Pi_k)]`.
pub fn born_quasi_three_from_pdm(
    r012: &Pdm,
    m0: &ProjectiveMeasurement,
    m1: &ProjectiveMeasurement,
    m2: &ProjectiveMeasurement,
) -> Result<QuasiDistribution> {
    born_quasi_from_pdm(r012, &[m0, m1, m2])
}

fn lueders_three_raw(s: &ThreeStep<'_>) -> Result<QuasiDistribution> {
    s.check()?;
    let mut values = Vec::with_capacity(s.shape().iter().product());
    for pi in s.m0.projectors() {
        let x = s.e1.apply(&sandwich(pi, s.rho))?;
        for pj in s.m1.projectors() {
            values.extend(s.second_measured(&sandwich(pj, &x))?);
        }
    }
    QuasiDistribution::new(s.shape(), values)
}

/// `P012 = Tr[Pi_k E2(Pi_j E1(Pi_i rho Pi_i) Pi_j)]`.
pub fn lueders_three(s: &ThreeStep<'_>) -> Result<QuasiDistribution> {
    let raw = lueders_three_raw(s)?;
    let values = raw.values.iter().map(|&p| clamp_probability(p)).collect::<Result<_>>()?;
    QuasiDistribution::new(raw.shape, values)
}

/// Three-step disturbance split into its four contributions.
#[derive(Clone, Debug, PartialEq)]
pub struct DisturbanceBreakdown3 {
    pub d_02_012bar: QuasiDistribution,
    pub d_2_12bar: QuasiDistribution,
    pub d_012bar_02bar: QuasiDistribution,
    pub d_12_012bar: QuasiDistribution,
    pub total: QuasiDistribution,
}

impl DisturbanceBreakdown3 {
    pub fn subterms(&self) -> [&QuasiDistribution; 4] {
        [&self.d_02_012bar, &self.d_2_12bar, &self.d_012bar_02bar, &self.d_12_012bar]
    }
}

/// `D012 = Q012 - P012` assembled from its four subterms; the sum is
/// cross-checked against the independently computed `Q - P`.
pub fn disturbance_three(s: &ThreeStep<'_>) -> Result<DisturbanceBreakdown3> {
    s.check()?;
    let shape = s.shape();
    let n: usize = shape.iter().product();
    let mut terms = [Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n)];
    let evolved = s.e1.apply(s.rho)?;
    for pi in s.m0.projectors() {
        let a = s.e1.apply(&sandwich(pi, s.rho))?;
        let c = s.e1.apply(&dephase(pi, s.rho))?;
        for pj in s.m1.projectors() {
            let t0 = (&a - &dephase(pj, &a)).scale_real(0.5);
            let t1 = (&evolved - &dephase(pj, &evolved)).scale_real(0.25);
            let t2 = (&dephase(pj, &c) - &c).scale_real(0.25);
            let t3 = (&sandwich(pj, &evolved) - &sandwich(pj, &c)).scale_real(0.5);
            for (slot, t) in terms.iter_mut().zip([t0, t1, t2, t3]) {
                slot.extend(s.second_measured(&t)?);
            }
        }
    }
    let total: Vec<f64> = (0..n).map(|x| terms.iter().map(|t| t[x]).sum()).collect();
    let total = QuasiDistribution::new(shape.clone(), total)?;

    let expected = born_quasi_three(s)?.sub(&lueders_three_raw(s)?)?;
    let deviation = total.max_abs_diff(&expected);
    if deviation > tol::DUAL_PATH {
        return Err(Error::Inconsistent { check: "three-step disturbance equals Q - P", deviation });
    }
    let [t0, t1, t2, t3] = terms;
    Ok(DisturbanceBreakdown3 {
        d_02_012bar: QuasiDistribution::new(shape.clone(), t0)?,
        d_2_12bar: QuasiDistribution::new(shape.clone(), t1)?,
        d_012bar_02bar: QuasiDistribution::new(shape.clone(), t2)?,
        d_12_012bar: QuasiDistribution::new(shape, t3)?,
        total,
    })
}

/// `N012`, the sum of `|D012(i,j,k)|`.
pub fn nsit_quantifier_three(s: &ThreeStep<'_>) -> Result<f64> {
    Ok(disturbance_three(s)?.total.abs_sum())
}

/// One no-signalling-in-time condition. The bar marks the step whose
/// measurement is omitted on the left-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NsitCondition {
    /// `P12(j,k) = sum_i P012(i,j,k)`.
    Bar0In012,
    /// `P02(i,k) = sum_j P012(i,j,k)`.
    Bar1In012,
    /// `P2(k) = sum_j P12(j,k)`.
    Bar1In12,
    /// `P2(k) = sum_i P02(i,k)`.
    Bar0In02,
    /// `P1(j) = sum_i P01(i,j)`.
    Bar0In01,
}

impl NsitCondition {
    pub const ALL: [NsitCondition; 5] = [
        NsitCondition::Bar0In012,
        NsitCondition::Bar1In012,
        NsitCondition::Bar1In12,
        NsitCondition::Bar0In02,
        NsitCondition::Bar0In01,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NsitCondition::Bar0In012 => "nsit_0bar12",
            NsitCondition::Bar1In012 => "nsit_01bar2",
            NsitCondition::Bar1In12 => "nsit_1bar2",
            NsitCondition::Bar0In02 => "nsit_0bar2",
            NsitCondition::Bar0In01 => "nsit_0bar1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NsitCheck {
    pub condition: NsitCondition,
    pub max_deviation: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NsitConditionReport {
    pub tolerance: f64,
    pub checks: Vec<NsitCheck>,
}

impl NsitConditionReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.max_deviation))
    }

    pub fn get(&self, condition: NsitCondition) -> &NsitCheck {
        self.checks.iter().find(|c| c.condition == condition).expect("every condition is checked")
    }
}

pub fn nsit_condition_report(s: &ThreeStep<'_>) -> Result<NsitConditionReport> {
    nsit_condition_report_with_tolerance(s, tol::NSIT_SATISFIED)
}

/// Evaluates the five conditions from sequential-measurement probabilities.
pub fn nsit_condition_report_with_tolerance(s: &ThreeStep<'_>, tolerance: f64) -> Result<NsitConditionReport> {
    s.check()?;
    let (n0, n1, n2) = (s.m0.outcomes(), s.m1.outcomes(), s.m2.outcomes());
    let p012 = lueders_three_raw(s)?;
    let evolved = s.e1.apply(s.rho)?;

    let mut p12 = Vec::with_capacity(n1 * n2);
    for pj in s.m1.projectors() {
        p12.extend(s.second_measured(&sandwich(pj, &evolved))?);
    }
    let p12 = QuasiDistribution::new(vec![n1, n2], p12)?;

    let mut p02 = Vec::with_capacity(n0 * n2);
    let mut p01 = Vec::with_capacity(n0 * n1);
    for pi in s.m0.projectors() {
        let a = s.e1.apply(&sandwich(pi, s.rho))?;
        p02.extend(s.second_measured(&a)?);
        for pj in s.m1.projectors() {
            p01.push(real_trace(&a, pj)?);
        }
    }
    let p02 = QuasiDistribution::new(vec![n0, n2], p02)?;
    let p01 = QuasiDistribution::new(vec![n0, n1], p01)?;

    let p2 = QuasiDistribution::new(vec![n2], s.second_measured(&evolved)?)?;
    let p1 = QuasiDistribution::new(
        vec![n1],
        s.m1.projectors().iter().map(|p| real_trace(&evolved, p)).collect::<Result<_>>()?,
    )?;

    let deviations = [
        p12.max_abs_diff(&p012.marginalize(&[1, 2])?),
        p02.max_abs_diff(&p012.marginalize(&[0, 2])?),
        p2.max_abs_diff(&p12.marginalize(&[1])?),
        p2.max_abs_diff(&p02.marginalize(&[1])?),
        p1.max_abs_diff(&p01.marginalize(&[1])?),
    ];
    let checks = NsitCondition::ALL
        .iter()
        .zip(deviations)
        .map(|(&condition, max_deviation)| NsitCheck {
            condition,
            max_deviation,
            satisfied: max_deviation <= tolerance,
        })
        .collect();
    Ok(NsitConditionReport { tolerance, checks })
}

/// Pauli-axis observable `sigma_a` for convenience in tests and tools.
pub fn axis_observable(axis: Axis) -> ComplexMatrix {
    pauli(axis.pauli_index())
}
