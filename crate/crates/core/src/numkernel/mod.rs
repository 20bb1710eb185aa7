//! Dense complex linear algebra for small operators.
//!
//! Everything here works on square row-major matrices of dimension at most a few
//! hundred. Values are immutable once built; every operation returns a fresh value.

mod eigen;
mod hermitian;
mod lu;
mod svd;

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{eig, eig_with, EigenSystem};
pub use hermitian::{hermitian_eig, sqrt_psd, sqrt_psd_with, HermitianEigen};
pub use lu::inverse;
pub use svd::{condition_number, singular_values};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Numerical thresholds shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Absolute tolerance for scalar comparisons.
    pub abs: f64,
    /// Relative tolerance for matrix norms.
    pub rel: f64,
    /// Largest accepted 2-norm condition number of an eigenvector basis.
    pub max_condition: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-9,
            max_condition: 1e8,
        }
    }
}

fn check_finite(data: &[C64]) -> Result<()> {
    match data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<C64>,
}

impl ComplexVector {
    pub fn new(data: Vec<C64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        check_finite(&data)?;
        Ok(Self { data })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_vec(data: Vec<C64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_vec(vec![ZERO; dim])
    }

    /// The computational basis vector `|index>`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut data = vec![ZERO; dim];
        data[index] = ONE;
        Self::from_vec(data)
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.data.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Result<C64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, factor: C64) -> ComplexVector {
        Self::from_vec(self.data.iter().map(|z| z * factor).collect())
    }

    pub fn add(&self, other: &ComplexVector) -> Result<ComplexVector> {
        self.check_dim(other)?;
        Ok(Self::from_vec(
            self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &ComplexVector) -> Result<ComplexVector> {
        self.check_dim(other)?;
        Ok(Self::from_vec(
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn conj(&self) -> ComplexVector {
        Self::from_vec(self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn normalized(&self) -> Result<ComplexVector> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(C64::new(1.0 / norm, 0.0)))
    }

    /// Kronecker product, `self` occupying the more significant index bits.
    pub fn kron(&self, other: &ComplexVector) -> ComplexVector {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            data.extend(other.data.iter().map(|b| a * b));
        }
        Self::from_vec(data)
    }

    pub fn max_abs_diff(&self, other: &ComplexVector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn check_dim(&self, other: &ComplexVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.data[i]
    }
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, values: &[f64]) -> Result<Self> {
        Self::new(dim, values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let dim = columns.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        let mut m = Self::zeros(dim);
        for (j, col) in columns.iter().enumerate() {
            if col.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: col.dim(),
                });
            }
            for i in 0..dim {
                m.data[i * dim + j] = col[i];
            }
        }
        Ok(m)
    }

    pub(crate) fn from_vec(dim: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_vec(dim, vec![ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn diag(values: &[C64]) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * dim + i] = v;
        }
        m
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &ComplexVector, b: &ComplexVector) -> Result<Self> {
        a.check_dim(b)?;
        let dim = a.dim();
        let mut data = Vec::with_capacity(dim * dim);
        for x in a.iter() {
            data.extend(b.iter().map(|y| x * y.conj()));
        }
        Ok(Self::from_vec(dim, data))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::from_vec((0..self.dim).map(|i| self[(i, j)]).collect())
    }

    pub fn row(&self, i: usize) -> ComplexVector {
        ComplexVector::from_vec(self.data[i * self.dim..(i + 1) * self.dim].to_vec())
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        Self::from_vec(n, data)
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(other.dim)?;
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (out, b) in data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *out += a * b;
                }
            }
        }
        Ok(Self::from_vec(n, data))
    }

    pub fn matvec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        self.check_dim(v.dim())?;
        let n = self.dim;
        Ok(ComplexVector::from_vec(
            (0..n)
                .map(|i| {
                    self.data[i * n..(i + 1) * n]
                        .iter()
                        .zip(v.iter())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(other.dim)?;
        Ok(Self::from_vec(
            self.dim,
            self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(other.dim)?;
        Ok(Self::from_vec(
            self.dim,
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, factor: C64) -> ComplexMatrix {
        Self::from_vec(self.dim, self.data.iter().map(|z| z * factor).collect())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.check_dim(other.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Kronecker product, `self` acting on the more significant index bits.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..n {
            for j in 0..n {
                let a = self.data[i * n + j];
                for k in 0..m {
                    for l in 0..m {
                        data[(i * m + k) * dim + j * m + l] = a * other.data[k * m + l];
                    }
                }
            }
        }
        Self::from_vec(dim, data)
    }

    /// Largest entry of `|M^† M - 1|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.adjoint().matmul(self).expect("same dimension");
        gram.max_abs_diff(&Self::identity(self.dim))
            .expect("same dimension")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// `||M - M^†||_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.sub(&self.adjoint())
            .expect("same dimension")
            .frobenius_norm()
    }

    pub(crate) fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if self.dim != found {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn matvec(a: &ComplexMatrix, v: &ComplexVector) -> Result<ComplexVector> {
    a.matvec(v)
}

/// `|<a|b>|^2 / (||a||^2 ||b||^2)`.
pub fn fidelity(a: &ComplexVector, b: &ComplexVector) -> Result<f64> {
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    let overlap = a.inner(b)?.norm_sqr();
    Ok((overlap / (na * nb)).clamp(0.0, 1.0))
}

/// True if `n` is a power of two, returning its base-2 logarithm.
pub fn log2_exact(n: usize) -> Option<usize> {
    (n > 0 && n.is_power_of_two()).then(|| n.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq34() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[1.0, -2.0, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&ComplexMatrix::identity(2)), ComplexMatrix::identity(2));
        let n = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            adjoint(&n),
            ComplexMatrix::from_real(2, &[0.0, 0.0, 1.0, 0.0]).unwrap()
        );
        assert_eq!(
            adjoint(&eq34()),
            ComplexMatrix::from_real(2, &[1.0, 0.0, -2.0, -1.0]).unwrap()
        );
    }

    #[test]
    fn matvec_examples() {
        let v = ComplexVector::new(vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.7)]).unwrap();
        assert_eq!(ComplexMatrix::identity(2).matvec(&v).unwrap(), v);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let out = z.matvec(&ComplexVector::from_real(&[h, h]).unwrap()).unwrap();
        assert_eq!(out, ComplexVector::from_real(&[h, -h]).unwrap());

        let (a0, a1) = (v[0], v[1]);
        let out = eq34().matvec(&v).unwrap();
        assert!((out[0] - (a0 - 2.0 * a1)).norm() < 1e-15);
        assert!((out[1] + a1).norm() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            a.matvec(&ComplexVector::zeros(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::from_real(2, &[1.0, f64::NAN, 0.0, 1.0]).unwrap_err();
        assert_eq!(err, Error::NonFinite { index: 1 });
        assert!(ComplexVector::from_real(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let v = ComplexVector::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        assert!((fidelity(&v, &v).unwrap() - 1.0).abs() < 1e-15);
        let phased = v.scale(C64::from_polar(1.0, 0.7));
        assert!((fidelity(&v, &phased).unwrap() - 1.0).abs() < 1e-15);
        let e0 = ComplexVector::basis(2, 0);
        let e1 = ComplexVector::basis(2, 1);
        assert_eq!(fidelity(&e0, &e1).unwrap(), 0.0);
        assert_eq!(fidelity(&e0, &ComplexVector::zeros(2)), Err(Error::ZeroVector));
    }

    #[test]
    fn kron_orders_left_factor_most_significant() {
        let x = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let id = ComplexMatrix::identity(2);
        let xi = x.kron(&id);
        // X on the high bit maps |00> to |10>
        let out = xi.matvec(&ComplexVector::basis(4, 0)).unwrap();
        assert_eq!(out, ComplexVector::basis(4, 2));
    }
}
