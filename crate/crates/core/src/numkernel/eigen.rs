//! General (non-Hermitian) eigendecomposition with right and left eigenvectors.
//!
//! The matrix is reduced to upper Hessenberg form by Householder reflections,
//! then to complex Schur form `A = Z T Z^†` with single-shift QR sweeps
//! (Wilkinson shift, Givens rotations). Right eigenvectors come from
//! back-substitution on `T`; left eigenvectors are the rows of the inverse of the
//! right eigenvector matrix, so `left_rows * right_vectors = 1` by construction.

use std::cmp::Ordering;
use std::f64::consts::PI;

use super::lu::inverse;
use super::svd::condition_number;
use super::{ComplexMatrix, Tolerances, C64, ONE, ZERO};
use crate::error::{Error, Result};

const ITERATIONS_PER_EIGENVALUE: usize = 60;

#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Sorted by descending modulus; equal moduli by ascending phase in (-pi, pi].
    pub eigenvalues: Vec<C64>,
    /// Column `n` is the unit-norm right eigenvector of `eigenvalues[n]`.
    pub right_vectors: ComplexMatrix,
    /// Row `n` satisfies `row_n . column_m = delta_nm`.
    pub left_rows: ComplexMatrix,
    /// 2-norm condition number of `right_vectors`.
    pub condition: f64,
}

impl EigenSystem {
    /// `right * diag(lambda) * left`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.right_vectors
            .matmul(&ComplexMatrix::diag(&self.eigenvalues))
            .and_then(|m| m.matmul(&self.left_rows))
            .expect("consistent dimensions")
    }
}

pub fn eig(m: &ComplexMatrix) -> Result<EigenSystem> {
    eig_with(m, &Tolerances::default())
}

pub fn eig_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<EigenSystem> {
    let n = m.dim();
    let (mut t, mut z) = hessenberg(m);
    schur(&mut t, &mut z, n)?;

    let lambdas: Vec<C64> = (0..n).map(|i| t[i * n + i]).collect();
    let mut vectors = triangular_eigenvectors(&t, n);
    // back to the original basis: u = Z y
    let mut columns: Vec<Vec<C64>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| (0..n).map(|j| z[i * n + j] * vectors[k][j]).sum())
                .collect()
        })
        .collect();
    vectors.clear();

    for col in columns.iter_mut() {
        normalize_with_phase(col);
    }

    let scale = lambdas.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| compare_eigenvalues(lambdas[a], lambdas[b], scale));

    let eigenvalues: Vec<C64> = order.iter().map(|&k| snap(lambdas[k], scale)).collect();
    let mut right = ComplexMatrix::zeros(n);
    {
        let data = right.data_mut();
        for (new, &old) in order.iter().enumerate() {
            for i in 0..n {
                data[i * n + new] = columns[old][i];
            }
        }
    }

    let condition = condition_number(&right)?;
    if !condition.is_finite() || condition > tol.max_condition {
        return Err(Error::Defective { condition });
    }
    let left = inverse(&right).map_err(|_| Error::Defective { condition })?;

    let system = EigenSystem {
        eigenvalues,
        right_vectors: right,
        left_rows: left,
        condition,
    };
    let residual = system.reconstruct().sub(m)?.frobenius_norm();
    if residual > tol.rel * m.frobenius_norm().max(f64::MIN_POSITIVE) {
        return Err(Error::Defective { condition });
    }
    Ok(system)
}

/// Treat an eigenvalue with negligible imaginary part as real, so that
/// `-1 - 1e-17i` orders like `-1`.
fn snap(z: C64, scale: f64) -> C64 {
    if z.im.abs() <= 1e-14 * scale.max(1.0) {
        C64::new(z.re, 0.0)
    } else {
        z
    }
}

fn phase(z: C64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

fn compare_eigenvalues(a: C64, b: C64, scale: f64) -> Ordering {
    let tie = 1e-10 * scale.max(1.0);
    let (ma, mb) = (a.norm(), b.norm());
    if (ma - mb).abs() > tie {
        return mb.total_cmp(&ma);
    }
    let (a, b) = (snap(a, scale), snap(b, scale));
    phase(a).total_cmp(&phase(b))
}

/// Unit 2-norm; the first component of (numerically) largest modulus is made
/// real and positive.
fn normalize_with_phase(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-12))
        .expect("non-empty");
    let p = v[pivot];
    let rot = p.conj() / p.norm() / norm;
    for z in v.iter_mut() {
        *z *= rot;
    }
    v[pivot] = C64::new(v[pivot].norm(), 0.0);
}

/// Householder reduction to upper Hessenberg form. Returns `(H, Q)` with
/// `A = Q H Q^†`, both row-major.
fn hessenberg(m: &ComplexMatrix) -> (Vec<C64>, Vec<C64>) {
    let n = m.dim();
    let mut h = m.as_slice().to_vec();
    let mut q = ComplexMatrix::identity(n).as_slice().to_vec();

    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = ((k + 1)..n).map(|i| h[i * n + k]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xnorm = (x[0].norm_sqr() + tail).sqrt();
        let ph = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
        let alpha = -ph * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- P H, P = 1 - 2 v v^† on rows k+1..n
        for j in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * h[(k + 1 + r) * n + j])
                .sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r) * n + j] -= 2.0 * vr * s;
            }
        }
        // H <- H P and Q <- Q P on columns k+1..n
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let s: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(c, vc)| mat[i * n + k + 1 + c] * vc)
                    .sum();
                for (c, vc) in v.iter().enumerate() {
                    mat[i * n + k + 1 + c] -= 2.0 * s * vc.conj();
                }
            }
        }
        for i in (k + 2)..n {
            h[i * n + k] = ZERO;
        }
    }
    (h, q)
}

/// Givens rotation `[[c, s], [-conj(s), c]]` (real `c`) mapping `(x, y)` to `(r, 0)`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, y.conj() / y.norm());
    }
    let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
    let ax = x.norm();
    (ax / norm, (x / ax) * y.conj() / norm)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (m1, m2) = (mean + disc, mean - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// In-place reduction of the Hessenberg `h` to upper triangular Schur form,
/// accumulating the unitary similarity into `z`.
fn schur(h: &mut [C64], z: &mut [C64], n: usize) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    let norm = h.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Ok(());
    }
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut rotations: Vec<(f64, C64)> = Vec::with_capacity(n);

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            if s == 0.0 {
                s = norm;
            }
            if h[lo * n + lo - 1].norm() <= f64::EPSILON * s {
                h[lo * n + lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > ITERATIONS_PER_EIGENVALUE {
            return Err(Error::NoConvergence {
                routine: "complex schur",
            });
        }

        let mu = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[hi * n + hi] + C64::new(1.5 * h[hi * n + hi - 1].norm(), 0.25 * h[hi * n + hi - 1].norm())
        } else {
            wilkinson_shift(
                h[(hi - 1) * n + hi - 1],
                h[(hi - 1) * n + hi],
                h[hi * n + hi - 1],
                h[hi * n + hi],
            )
        };

        for i in lo..=hi {
            h[i * n + i] -= mu;
        }
        rotations.clear();
        for k in lo..hi {
            let (c, s) = givens(h[k * n + k], h[(k + 1) * n + k]);
            rotations.push((c, s));
            for j in k..n {
                let (x, y) = (h[k * n + j], h[(k + 1) * n + j]);
                h[k * n + j] = c * x + s * y;
                h[(k + 1) * n + j] = -s.conj() * x + c * y;
            }
            h[(k + 1) * n + k] = ZERO;
        }
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + idx;
            let last = (k + 2).min(hi);
            for i in 0..=last {
                let (x, y) = (h[i * n + k], h[i * n + k + 1]);
                h[i * n + k] = c * x + s.conj() * y;
                h[i * n + k + 1] = -s * x + c * y;
            }
            for i in 0..n {
                let (x, y) = (z[i * n + k], z[i * n + k + 1]);
                z[i * n + k] = c * x + s.conj() * y;
                z[i * n + k + 1] = -s * x + c * y;
            }
        }
        for i in lo..=hi {
            h[i * n + i] += mu;
        }
    }
    Ok(())
}

/// Eigenvectors of an upper triangular matrix, one `Vec` per eigenvalue.
fn triangular_eigenvectors(t: &[C64], n: usize) -> Vec<Vec<C64>> {
    let tnorm = t.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let small = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);
    (0..n)
        .map(|k| {
            let lambda = t[k * n + k];
            let mut y = vec![ZERO; n];
            y[k] = ONE;
            for i in (0..k).rev() {
                let s: C64 = ((i + 1)..=k).map(|j| t[i * n + j] * y[j]).sum();
                let mut d = t[i * n + i] - lambda;
                if d.norm() < small {
                    d = C64::new(small, 0.0);
                }
                y[i] = -s / d;
            }
            y
        })
        .collect()
}
