//! Seeded sampling of Gaussian matrices, Haar unitaries, and random states.

use nalgebra::linalg::QR;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::operator::{CMat, CVec, DensityOperator, DimsProfile, C64};

pub(crate) fn seeded(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// splitmix64 step; used to chain structured seeds into one stream seed.
pub(crate) fn mix(state: u64, word: u64) -> u64 {
    let mut z = state
        .wrapping_add(0x9e3779b97f4a7c15)
        .wrapping_add(word.wrapping_mul(0xbf58476d1ce4e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Standard complex Gaussian via Box-Muller.
pub(crate) fn gaussian(rng: &mut ChaCha12Rng) -> C64 {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    let radius = (-2.0 * (1.0 - u1).ln()).sqrt() / 2.0_f64.sqrt();
    let angle = 2.0 * std::f64::consts::PI * u2;
    C64::new(radius * angle.cos(), radius * angle.sin())
}

/// Matrix of iid standard complex Gaussians.
pub(crate) fn ginibre(rng: &mut ChaCha12Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// phases absorbed into Q.
pub(crate) fn haar_unitary(rng: &mut ChaCha12Rng, n: usize) -> CMat {
    let g = ginibre(rng, n, n);
    let qr = QR::new(g);
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / C64::new(d.norm(), 0.0)
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            u[(i, k)] *= phase;
        }
    }
    u
}

/// Probability vector from normalized exponentials (flat Dirichlet).
pub(crate) fn probability_vector(rng: &mut ChaCha12Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            -(1.0 - u).ln()
        })
        .collect();
    let total: f64 = v.iter().sum();
    for x in &mut v {
        *x /= total;
    }
    v
}

#[cfg(test)]
pub(crate) fn random_hermitian(
    rng: &mut ChaCha12Rng,
    n: usize,
    dims: DimsProfile,
) -> crate::operator::HermitianOperator {
    let g = ginibre(rng, n, n);
    let h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    crate::operator::HermitianOperator::new_symmetrized(h, dims)
}

/// Haar-random pure state on the full space.
pub(crate) fn random_pure(rng: &mut ChaCha12Rng, dims: DimsProfile) -> crate::operator::PureState {
    let n = dims.total();
    let mut amp = CVec::from_fn(n, |_, _| gaussian(rng));
    let norm = amp.norm();
    amp /= C64::new(norm, 0.0);
    crate::operator::PureState::new(amp, dims).expect("normalized Gaussian vector")
}

/// Full-rank density operator from a Ginibre matrix (GG† normalized).
pub(crate) fn random_density(rng: &mut ChaCha12Rng, dims: DimsProfile) -> DensityOperator {
    random_density_ranked(rng, dims.total(), dims)
}

/// Density operator of the given rank: GG†/Tr with G of shape n x rank.
pub(crate) fn random_density_ranked(
    rng: &mut ChaCha12Rng,
    rank: usize,
    dims: DimsProfile,
) -> DensityOperator {
    let n = dims.total();
    let rank = rank.clamp(1, n);
    let g = ginibre(rng, n, rank);
    let w = &g * g.adjoint();
    let trace = w.trace().re;
    DensityOperator::new_unvalidated(w * C64::new(1.0 / trace, 0.0), dims)
}
