use super::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.dim();
    let mut a = m.as_slice().to_vec();
    let mut inv = vec![ZERO; n * n];
    for i in 0..n {
        inv[i * n + i] = ONE;
    }
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm()))
            .expect("non-empty range");
        if a[pivot * n + col].norm() <= f64::EPSILON * scale * 1e-3 {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
                inv.swap(col * n + j, pivot * n + j);
            }
        }
        let p: C64 = ONE / a[col * n + col];
        for j in 0..n {
            a[col * n + j] *= p;
            inv[col * n + j] *= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col];
            if f == ZERO {
                continue;
            }
            for j in 0..n {
                let (av, iv) = (a[col * n + j], inv[col * n + j]);
                a[r * n + j] -= f * av;
                inv[r * n + j] -= f * iv;
            }
        }
    }
    Ok(ComplexMatrix::from_vec(n, inv))
}
