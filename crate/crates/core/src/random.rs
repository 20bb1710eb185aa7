//! Seeded generators for randomized checks and benchmark instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::biortho::BiorthogonalSystem;
use crate::numkernel::{inverse, ComplexMatrix, ComplexVector, C64, ZERO};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed unit vector.
pub fn state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexVector {
    let v = ComplexVector::from_vec((0..dim).map(|_| complex_gaussian(rng)).collect());
    v.normalized().expect("gaussian vector is nonzero")
}

/// Random unitary via modified Gram-Schmidt on a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        for q in &cols {
            let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let columns: Vec<ComplexVector> = cols.into_iter().map(ComplexVector::from_vec).collect();
    ComplexMatrix::from_columns(&columns).expect("square")
}

/// Invertible, non-orthogonal basis `W1 diag(s) W2` with `s` in `[0.3, 1.5]`,
/// so the condition number stays below 5.
pub fn basis<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let s: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.random_range(0.3..1.5), 0.0))
        .collect();
    unitary(rng, dim)
        .matmul(&ComplexMatrix::diag(&s))
        .and_then(|m| m.matmul(&unitary(rng, dim)))
        .expect("square")
}

/// Eigenvalues with modulus in `[0.4, 2.5]` and uniform phase.
pub fn eigenvalues<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    (0..dim)
        .map(|_| {
            let r = rng.random_range(0.4..2.5);
            let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            C64::from_polar(r, theta)
        })
        .collect()
}

/// A diagonalizable, invertible, generally non-normal operator `R diag(lambda) R^{-1}`.
pub fn diagonalizable<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let r = basis(rng, dim);
    let lambda = eigenvalues(rng, dim);
    r.matmul(&ComplexMatrix::diag(&lambda))
        .and_then(|m| m.matmul(&inverse(&r)?))
        .expect("well-conditioned basis")
}

/// Normalizers drawn from `[0.5, 2]`.
pub fn kappas<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(0.5..2.0)).collect()
}

/// A valid biorthogonal system on a random basis with the given normalizers.
pub fn system<R: Rng + ?Sized>(rng: &mut R, kappa: Vec<f64>) -> BiorthogonalSystem {
    let dim = kappa.len();
    let raw = basis(rng, dim);
    let columns: Vec<ComplexVector> = (0..dim)
        .map(|j| raw.column(j).normalized().expect("nonzero column"))
        .collect();
    let right = ComplexMatrix::from_columns(&columns).expect("square");
    let left = inverse(&right).expect("invertible");
    BiorthogonalSystem::from_dual_rows(&right, &left, kappa)
}

/// Random diagonal unitary.
pub fn phases<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let d: Vec<C64> = (0..dim)
        .map(|_| C64::from_polar(1.0, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)))
        .collect();
    ComplexMatrix::diag(&d)
}

/// Gaussian matrix, not normalized.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut data = vec![ZERO; dim * dim];
    for z in data.iter_mut() {
        *z = complex_gaussian(rng);
    }
    ComplexMatrix::from_vec(dim, data)
}
