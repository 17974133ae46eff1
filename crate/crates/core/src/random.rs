//! Seeded generators for random states, bases and observables.
//!
//! Used by the randomized optimality check and by the property suites. All
//! generators take an explicit RNG so results are reproducible from a seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quantum::{c, CMatrix, CVector, DensityMatrix, HermitianOperator, MeasurementBasis};
use crate::tol::Tolerances;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im)
    })
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    let v = gaussian_matrix(rng, n, 1).column(0).into_owned();
    let norm = v.norm();
    v.unscale(norm)
}

/// Haar-distributed orthonormal basis via Gram-Schmidt on Gaussian columns.
pub fn random_basis<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MeasurementBasis {
    loop {
        let g = gaussian_matrix(rng, n, n);
        let mut cols: Vec<CVector> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v = g.column(j).into_owned();
            // two passes keep the result orthonormal to machine precision
            for _ in 0..2 {
                for u in &cols {
                    let proj = u.dotc(&v);
                    v -= u * proj;
                }
            }
            let norm = v.norm();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols.push(v.unscale(norm));
        }
        if ok {
            if let Ok(basis) = MeasurementBasis::new(cols, &Tolerances::DEFAULT) {
                return basis;
            }
        }
    }
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermitianOperator {
    let g = gaussian_matrix(rng, n, n);
    let h = (&g + g.adjoint()).scale(0.5);
    HermitianOperator::new(h, &Tolerances::DEFAULT).expect("symmetrized matrix is Hermitian")
}

/// Random density matrix of the given rank, spectrum drawn uniformly from
/// the simplex and rotated into a random basis.
pub fn random_density_of_rank<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> DensityMatrix {
    let basis = random_basis(rng, n);
    let weights = random_simplex(rng, rank.clamp(1, n));
    let mut spectrum = vec![0.0; n];
    spectrum[..weights.len()].copy_from_slice(&weights);
    let op = HermitianOperator::from_spectrum(&spectrum, &basis).expect("matching dimensions");
    DensityMatrix::new(op, &Tolerances::DEFAULT).expect("convex spectrum yields a state")
}

/// Full-rank random density matrix with every eigenvalue at least `floor / n`.
pub fn random_full_rank_density<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix {
    let basis = random_basis(rng, n);
    let floor = 0.05;
    let weights: Vec<f64> = random_simplex(rng, n).iter().map(|w| (1.0 - floor) * w + floor / n as f64).collect();
    let op = HermitianOperator::from_spectrum(&weights, &basis).expect("matching dimensions");
    DensityMatrix::new(op, &Tolerances::DEFAULT).expect("convex spectrum yields a state")
}

/// Uniform draw from the probability simplex of dimension `n`.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws.iter().map(|d| d / total).collect()
}
