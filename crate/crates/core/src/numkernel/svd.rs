use super::hermitian::jacobi_rotation;
use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Singular values in descending order, by one-sided (Hestenes) Jacobi on the
/// columns. This never forms `M^† M`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    // column-major working copy
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| m[(i, j)]).collect())
        .collect();

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        converged = true;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let gamma: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let beta: C64 = cols[p].iter().zip(&cols[q]).map(|(a, b)| a.conj() * b).sum();
                if beta == ZERO || beta.norm() <= f64::EPSILON * (alpha * gamma).sqrt() {
                    continue;
                }
                converged = false;
                let (wpp, wpq, wqp, wqq) = jacobi_rotation(alpha, gamma, beta);
                for k in 0..n {
                    let (x, y) = (cols[p][k], cols[q][k]);
                    cols[p][k] = x * wpp + y * wqp;
                    cols[q][k] = x * wpq + y * wqq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "one-sided jacobi svd",
        });
    }
    let mut values: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// 2-norm condition number `sigma_max / sigma_min` (infinite when singular).
pub fn condition_number(m: &ComplexMatrix) -> Result<f64> {
    let s = singular_values(m)?;
    let (max, min) = (s[0], s[s.len() - 1]);
    Ok(if min == 0.0 { f64::INFINITY } else { max / min })
}
