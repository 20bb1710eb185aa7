use super::{ComplexMatrix, Tolerances, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix: `M = V diag(values) V^†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: ComplexMatrix,
}

/// Unitary 2x2 rotation in the `(p, q)` plane that diagonalizes
/// `[[alpha, beta], [conj(beta), gamma]]`, returned as `(w_pp, w_pq, w_qp, w_qq)`.
pub(super) fn jacobi_rotation(alpha: f64, gamma: f64, beta: C64) -> (C64, C64, C64, C64) {
    let b = beta.norm();
    let phase = if b == 0.0 { ONE } else { beta / b };
    let zeta = (gamma - alpha) / (2.0 * b);
    let t = if zeta == 0.0 {
        1.0
    } else {
        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = phase.conj();
    (C64::new(c, 0.0), C64::new(s, 0.0), -e * s, e * c)
}

/// Cyclic Jacobi eigensolver. The input is symmetrized before iterating.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = m.dim();
    let herm = m.add(&m.adjoint())?.scale(C64::new(0.5, 0.0));
    let mut a = herm.as_slice().to_vec();
    let mut v = ComplexMatrix::identity(n).as_slice().to_vec();
    let total = herm.frobenius_norm();

    let off = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = n == 1 || total == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[p * n + q];
                if beta.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let (wpp, wpq, wqp, wqq) =
                    jacobi_rotation(a[p * n + p].re, a[q * n + q].re, beta);
                // A <- A W
                for k in 0..n {
                    let (x, y) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = x * wpp + y * wqp;
                    a[k * n + q] = x * wpq + y * wqq;
                }
                // A <- W^† A
                for k in 0..n {
                    let (x, y) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = wpp.conj() * x + wqp.conj() * y;
                    a[q * n + k] = wpq.conj() * x + wqq.conj() * y;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for k in 0..n {
                    let (x, y) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = x * wpp + y * wqp;
                    v[k * n + q] = x * wpq + y * wqq;
                }
            }
        }
        converged = off(&a) <= f64::EPSILON * total * 1e-2;
    }
    if !converged && off(&a) > 1e-13 * total {
        return Err(Error::NoConvergence {
            routine: "hermitian jacobi",
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    {
        let out = vectors.data_mut();
        for (new, &old) in order.iter().enumerate() {
            for k in 0..n {
                out[k * n + new] = v[k * n + old];
            }
        }
    }
    Ok(HermitianEigen { values, vectors })
}

pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    sqrt_psd_with(m, &Tolerances::default())
}

/// Hermitian positive semidefinite square root. Eigenvalues in `[-tol, 0)` are
/// clamped to zero; anything more negative is rejected.
pub fn sqrt_psd_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let norm = m.frobenius_norm();
    let deviation = m.hermitian_deviation();
    if deviation > tol.rel * norm + tol.abs {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = hermitian_eig(m)?;
    let floor = tol.abs * norm.max(1.0);
    let min = eig.values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -floor {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let roots: Vec<C64> = eig
        .values
        .iter()
        .map(|&x| C64::new(x.max(0.0).sqrt(), 0.0))
        .collect();
    let v = &eig.vectors;
    let root = v.matmul(&ComplexMatrix::diag(&roots))?.matmul(&v.adjoint())?;
    // exact Hermitian symmetry
    let sym = root.add(&root.adjoint())?.scale(C64::new(0.5, 0.0));
    Ok(sym)
}
