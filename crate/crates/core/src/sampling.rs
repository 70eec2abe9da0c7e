//! Random states, channels, measurements and separable PDMs for scans and tests.

use rand::Rng;
use rand_distr::{Dirichlet, Distribution, StandardNormal};

use crate::channels::QuantumChannel;
use crate::linalg::{hermitian_eig, tensor_product, ComplexMatrix, C64};
use crate::pdm::Pdm;
use crate::quasiprob::ProjectiveMeasurement;

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Complex Ginibre matrix with standard normal entries.
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian_complex(rng))
}

pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut v: Vec<C64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    ComplexMatrix::outer(&v)
}

/// Hilbert-Schmidt random mixed state `G G^dag / Tr[G G^dag]`.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let m = m.scale_real(1.0 / tr);
    // Symmetrize away round-off so validation sees an exactly Hermitian input.
    (&m + &m.adjoint()).scale_real(0.5)
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [0; 3].map(|_| StandardNormal.sample(rng));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.map(|x| x / n);
        }
    }
}

/// CPTP map with `n_kraus` operators `G_i S^{-1/2}`, where `S = sum G_i^dag G_i`.
pub fn random_channel<R: Rng + ?Sized>(dim: usize, n_kraus: usize, rng: &mut R) -> QuantumChannel {
    let gs: Vec<ComplexMatrix> = (0..n_kraus.max(1)).map(|_| ginibre(dim, rng)).collect();
    let s = gs.iter().fold(ComplexMatrix::zeros(dim), |acc, g| &acc + &(&g.adjoint() * g));
    let s = (&s + &s.adjoint()).scale_real(0.5);
    let eig = hermitian_eig(&s).expect("Gram matrix is Hermitian");
    let v = eig.eigenvectors();
    let inv_sqrt = ComplexMatrix::from_diagonal(&eig.eigenvalues().iter().map(|l| 1.0 / l.sqrt()).collect::<Vec<_>>());
    let s_inv_sqrt = &(v * &inv_sqrt) * &v.adjoint();
    let kraus = gs.iter().map(|g| g * &s_inv_sqrt).collect();
    QuantumChannel::new(kraus).expect("normalized Kraus set is trace preserving")
}

/// Measurement in the eigenbasis of a random Hermitian matrix (rank-one projectors).
pub fn random_measurement<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ProjectiveMeasurement {
    if dim == 2 {
        return ProjectiveMeasurement::bloch_vector(random_unit_vector(rng)).expect("unit vector");
    }
    let g = ginibre(dim, rng);
    ProjectiveMeasurement::from_observable(&(&g + &g.adjoint())).expect("random observable")
}

/// Convex mixture of `1..=max_terms` product pure states on two qubit steps.
pub fn random_separable_pdm<R: Rng + ?Sized>(max_terms: usize, rng: &mut R) -> Pdm {
    let n = rng.gen_range(1..=max_terms.max(1));
    let weights: Vec<f64> =
        if n == 1 { vec![1.0] } else { Dirichlet::new(&vec![1.0; n]).expect("valid concentration").sample(rng) };
    let m = weights.iter().fold(ComplexMatrix::zeros(4), |acc, &w| {
        let term = tensor_product(&random_pure_state(2, rng), &random_pure_state(2, rng));
        &acc + &term.scale_real(w)
    });
    let m = (&m + &m.adjoint()).scale_real(0.5);
    let tr = m.trace().re;
    Pdm::new(m.scale_real(1.0 / tr), vec![2, 2]).expect("convex mixture of product states")
}
