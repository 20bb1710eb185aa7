//! Biorthogonal systems `{|u_n>, |zeta_n>}` with `<zeta_n|u_m> = kappa_n delta_nm`,
//! and operators written as `sum_nm V_nm |u_n><zeta_m|`.

use crate::error::{Error, Result};
use crate::numkernel::{self, ComplexMatrix, ComplexVector, Tolerances, C64, ZERO};

/// Paired right/left bases. The right vectors always have unit 2-norm and every
/// normalizer `kappa_n = <zeta_n|u_n>` is a positive real.
#[derive(Debug, Clone, PartialEq)]
pub struct BiorthogonalSystem {
    u: Vec<ComplexVector>,
    zeta: Vec<ComplexVector>,
    kappa: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    /// Largest `|<zeta_n|u_m> - kappa_n delta_nm|`.
    pub max_overlap_deviation: f64,
    /// Largest `| ||u_n|| - 1 |`.
    pub max_norm_deviation: f64,
    pub min_kappa: f64,
    /// Condition number of the matrix with columns `u_n`.
    pub condition: f64,
    pub passed: bool,
}

/// How the normalizers are chosen when building a system from an eigendecomposition.
#[derive(Debug, Clone, PartialEq)]
pub enum KappaPolicy {
    /// `kappa_n = |lambda_n|`, which makes the representation `diag(lambda_n / |lambda_n|)` unitary.
    ModulusOfEigenvalue,
    AllOnes,
    Explicit(Vec<f64>),
}

impl Default for KappaPolicy {
    fn default() -> Self {
        Self::ModulusOfEigenvalue
    }
}

impl BiorthogonalSystem {
    /// Builds a system from explicit right and left vectors. Each `u_n` is rescaled to
    /// unit norm; the `zeta_n` are kept exactly as given.
    pub fn from_explicit(u: Vec<ComplexVector>, zeta: Vec<ComplexVector>) -> Result<Self> {
        Self::from_explicit_with(u, zeta, &Tolerances::default())
    }

    pub fn from_explicit_with(
        u: Vec<ComplexVector>,
        zeta: Vec<ComplexVector>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let dim = u.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        if zeta.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: zeta.len(),
            });
        }
        if let Some(v) = u.iter().chain(&zeta).find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        let u = u
            .iter()
            .map(ComplexVector::normalized)
            .collect::<Result<Vec<_>>>()?;

        let mut kappa = Vec::with_capacity(dim);
        for n in 0..dim {
            let k = zeta[n].inner(&u[n])?;
            if k.re <= tol.abs || k.im.abs() > tol.rel * k.norm().max(1.0) {
                return Err(Error::NonPositiveKappa {
                    index: n,
                    re: k.re,
                    im: k.im,
                });
            }
            kappa.push(k.re);
        }
        for n in 0..dim {
            let bound = tol.rel * zeta[n].norm().max(1.0);
            for m in (0..dim).filter(|&m| m != n) {
                let overlap = zeta[n].inner(&u[m])?.norm();
                if overlap > bound {
                    return Err(Error::BiorthogonalityViolation { n, m, overlap });
                }
            }
        }
        let system = Self { u, zeta, kappa };
        let condition = numkernel::condition_number(&system.right_matrix())?;
        if !condition.is_finite() || condition > tol.max_condition {
            return Err(Error::IllConditionedBasis { condition });
        }
        Ok(system)
    }

    /// The computational basis with `u_n = zeta_n = |n>`.
    pub fn orthonormal(dim: usize) -> Self {
        let basis: Vec<_> = (0..dim).map(|n| ComplexVector::basis(dim, n)).collect();
        Self {
            u: basis.clone(),
            zeta: basis,
            kappa: vec![1.0; dim],
        }
    }

    /// Assembles a system from right vectors and the rows of their inverse, scaling
    /// `zeta_n = kappa_n * conj(row_n)`.
    pub(crate) fn from_dual_rows(right: &ComplexMatrix, left_rows: &ComplexMatrix, kappa: Vec<f64>) -> Self {
        let dim = right.dim();
        let u = (0..dim).map(|n| right.column(n)).collect();
        let zeta = (0..dim)
            .map(|n| left_rows.row(n).conj().scale(C64::new(kappa[n], 0.0)))
            .collect();
        Self { u, zeta, kappa }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[ComplexVector] {
        &self.u
    }

    pub fn zeta(&self) -> &[ComplexVector] {
        &self.zeta
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// Matrix whose columns are the `u_n`.
    pub fn right_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.u).expect("square by construction")
    }

    /// Matrix whose columns are the `zeta_n`.
    pub fn left_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.zeta).expect("square by construction")
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(&Tolerances::default())
    }

    pub fn validate_with(&self, tol: &Tolerances) -> ValidationReport {
        let dim = self.dim();
        let mut overlap_dev: f64 = 0.0;
        let mut zeta_scale: f64 = 1.0;
        for n in 0..dim {
            zeta_scale = zeta_scale.max(self.zeta[n].norm());
            for m in 0..dim {
                let expected = if n == m { self.kappa[n] } else { 0.0 };
                let got = self.zeta[n].inner(&self.u[m]).unwrap_or(ZERO);
                overlap_dev = overlap_dev.max((got - expected).norm());
            }
        }
        let norm_dev = self
            .u
            .iter()
            .map(|v| (v.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        let min_kappa = self.kappa.iter().copied().fold(f64::INFINITY, f64::min);
        let condition =
            numkernel::condition_number(&self.right_matrix()).unwrap_or(f64::INFINITY);
        let passed = overlap_dev <= tol.rel * zeta_scale
            && norm_dev <= tol.abs
            && min_kappa > tol.abs
            && condition <= tol.max_condition;
        ValidationReport {
            max_overlap_deviation: overlap_dev,
            max_norm_deviation: norm_dev,
            min_kappa,
            condition,
            passed,
        }
    }

    fn inverse_kappa(&self) -> Vec<C64> {
        self.kappa.iter().map(|k| C64::new(1.0 / k, 0.0)).collect()
    }

    /// `f = sum_n (1/kappa_n) |zeta_n><zeta_n|`, which maps `u_n` to `zeta_n`.
    pub fn metric(&self) -> ComplexMatrix {
        let z = self.left_matrix();
        z.matmul(&ComplexMatrix::diag(&self.inverse_kappa()))
            .and_then(|m| m.matmul(&z.adjoint()))
            .expect("square by construction")
    }

    /// `f^{-1} = sum_n (1/kappa_n) |u_n><u_n|`.
    pub fn metric_inverse(&self) -> ComplexMatrix {
        let u = self.right_matrix();
        u.matmul(&ComplexMatrix::diag(&self.inverse_kappa()))
            .and_then(|m| m.matmul(&u.adjoint()))
            .expect("square by construction")
    }

    /// `sum_n (1/kappa_n) |u_n><zeta_n|`, which equals the identity on a valid system.
    pub fn unity(&self) -> ComplexMatrix {
        self.right_matrix()
            .matmul(&ComplexMatrix::diag(&self.inverse_kappa()))
            .and_then(|m| m.matmul(&self.left_matrix().adjoint()))
            .expect("square by construction")
    }

    /// The associated state `f|psi>`.
    pub fn associate(&self, psi: &ComplexVector) -> Result<ComplexVector> {
        self.metric().matvec(psi)
    }

    /// Coefficients `c_n = <zeta_n|psi> / kappa_n`, checked by reconstruction.
    pub fn expand(&self, psi: &ComplexVector) -> Result<BiorthoExpansion<'_>> {
        self.expand_with(psi, &Tolerances::default())
    }

    pub fn expand_with(&self, psi: &ComplexVector, tol: &Tolerances) -> Result<BiorthoExpansion<'_>> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi.dim(),
            });
        }
        let coeffs = self
            .zeta
            .iter()
            .zip(&self.kappa)
            .map(|(z, k)| z.inner(psi).map(|c| c / k))
            .collect::<Result<Vec<_>>>()?;
        let expansion = BiorthoExpansion {
            system: self,
            coeffs: ComplexVector::from_vec(coeffs),
        };
        let residual = expansion.reconstruct().sub(psi)?.norm();
        if residual > tol.rel * psi.norm().max(1.0) {
            return Err(Error::ReconstructionFailure { residual });
        }
        Ok(expansion)
    }

    /// `<phi~|psi> = sum_n kappa_n conj(d_n) c_n`.
    pub fn bi_inner(&self, phi: &ComplexVector, psi: &ComplexVector) -> Result<C64> {
        let d = self.expand(phi)?;
        let c = self.expand(psi)?;
        Ok(d.coeffs
            .iter()
            .zip(c.coeffs.iter())
            .zip(&self.kappa)
            .map(|((d, c), k)| d.conj() * c * k)
            .sum())
    }
}

/// Coefficients of a state in the right basis of a system.
#[derive(Debug, Clone)]
pub struct BiorthoExpansion<'a> {
    pub system: &'a BiorthogonalSystem,
    pub coeffs: ComplexVector,
}

impl BiorthoExpansion<'_> {
    pub fn reconstruct(&self) -> ComplexVector {
        let dim = self.system.dim();
        let mut out = vec![ZERO; dim];
        for (c, u) in self.coeffs.iter().zip(&self.system.u) {
            for (o, x) in out.iter_mut().zip(u.iter()) {
                *o += c * x;
            }
        }
        ComplexVector::from_vec(out)
    }
}

/// `V^b = sum_nm rep[n][m] |u_n><zeta_m|`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiorthogonalOperator {
    system: BiorthogonalSystem,
    rep: ComplexMatrix,
}

impl BiorthogonalOperator {
    pub fn new(system: BiorthogonalSystem, rep: ComplexMatrix) -> Result<Self> {
        if rep.dim() != system.dim() {
            return Err(Error::DimensionMismatch {
                expected: system.dim(),
                found: rep.dim(),
            });
        }
        Ok(Self { system, rep })
    }

    pub fn from_eigen(v: &ComplexMatrix, policy: &KappaPolicy) -> Result<Self> {
        Self::from_eigen_with(v, policy, &Tolerances::default())
    }

    /// Right eigenvectors become `u_n`, dual rows scaled by `kappa_n` become `zeta_n`,
    /// and the representation is `diag(lambda_n / kappa_n)`.
    pub fn from_eigen_with(v: &ComplexMatrix, policy: &KappaPolicy, tol: &Tolerances) -> Result<Self> {
        let eig = numkernel::eig_with(v, tol)?;
        let dim = v.dim();
        let scale = eig.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
        let kappa: Vec<f64> = match policy {
            KappaPolicy::ModulusOfEigenvalue => {
                if let Some(index) = eig
                    .eigenvalues
                    .iter()
                    .position(|l| l.norm() <= tol.abs * scale.max(1.0))
                {
                    return Err(Error::SingularWithModulusPolicy { index });
                }
                eig.eigenvalues.iter().map(|l| l.norm()).collect()
            }
            KappaPolicy::AllOnes => vec![1.0; dim],
            KappaPolicy::Explicit(list) => {
                if list.len() != dim {
                    return Err(Error::ExplicitKappaInvalid {
                        reason: format!("expected {dim} values, got {}", list.len()),
                    });
                }
                if let Some(k) = list.iter().find(|k| !k.is_finite() || **k <= 0.0) {
                    return Err(Error::ExplicitKappaInvalid {
                        reason: format!("{k} is not a positive finite real"),
                    });
                }
                list.clone()
            }
        };
        let rep = ComplexMatrix::diag(
            &eig.eigenvalues
                .iter()
                .zip(&kappa)
                .map(|(l, k)| l / k)
                .collect::<Vec<_>>(),
        );
        let system = BiorthogonalSystem::from_dual_rows(&eig.right_vectors, &eig.left_rows, kappa);
        Ok(Self { system, rep })
    }

    pub fn system(&self) -> &BiorthogonalSystem {
        &self.system
    }

    pub fn rep(&self) -> &ComplexMatrix {
        &self.rep
    }

    /// The operator in the computational basis.
    pub fn to_computational(&self) -> ComplexMatrix {
        self.system
            .right_matrix()
            .matmul(&self.rep)
            .and_then(|m| m.matmul(&self.system.left_matrix().adjoint()))
            .expect("square by construction")
    }

    /// The biorthogonal adjoint: same system, conjugate-transposed representation.
    pub fn bi_adjoint(&self) -> Self {
        Self {
            system: self.system.clone(),
            rep: self.rep.adjoint(),
        }
    }

    pub fn is_bi_unitary(&self, tol: &Tolerances) -> bool {
        self.system.kappa.iter().all(|k| (k - 1.0).abs() <= tol.abs)
            && self.rep.is_unitary(tol.abs)
    }

    /// `||V^† f V - f||_F` in the computational basis.
    pub fn pseudo_unitarity_residual(&self) -> f64 {
        let v = self.to_computational();
        let f = self.system.metric();
        v.adjoint()
            .matmul(&f)
            .and_then(|m| m.matmul(&v))
            .and_then(|m| m.sub(&f))
            .expect("square by construction")
            .frobenius_norm()
    }

    pub fn is_bi_hermitian(&self, tol: &Tolerances) -> bool {
        self.rep.hermitian_deviation() <= tol.abs.max(tol.rel * self.rep.frobenius_norm())
    }

    /// Classical evaluation of `V|psi> = sum_nm V_nm kappa_m c_m |u_n>`.
    pub fn apply(&self, psi: &ComplexVector) -> Result<ComplexVector> {
        let expansion = self.system.expand(psi)?;
        let weighted = ComplexVector::from_vec(
            expansion
                .coeffs
                .iter()
                .zip(&self.system.kappa)
                .map(|(c, k)| c * k)
                .collect(),
        );
        let mixed = self.rep.matvec(&weighted)?;
        Ok(BiorthoExpansion {
            system: &self.system,
            coeffs: mixed,
        }
        .reconstruct())
    }
}

/// `||V^† f - f V||_F`.
pub fn pseudo_hermiticity_residual(v: &ComplexMatrix, f: &ComplexMatrix) -> Result<f64> {
    Ok(v.adjoint().matmul(f)?.sub(&f.matmul(v)?)?.frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn real_vec(v: &[f64]) -> ComplexVector {
        ComplexVector::from_real(v).unwrap()
    }

    fn real(dim: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(dim, v).unwrap()
    }

    /// u0 = |0>, u1 = (|0>+|1>)/sqrt2, zeta0 = |0>-|1>, zeta1 = sqrt2 |1>.
    fn example_system() -> BiorthogonalSystem {
        BiorthogonalSystem::from_explicit(
            vec![real_vec(&[1.0, 0.0]), real_vec(&[H, H])],
            vec![real_vec(&[1.0, -1.0]), real_vec(&[0.0, 2f64.sqrt()])],
        )
        .unwrap()
    }

    fn tau_system(tau: f64) -> BiorthogonalSystem {
        BiorthogonalSystem::from_explicit(
            vec![real_vec(&[1.0, 0.0]), real_vec(&[H, H])],
            vec![real_vec(&[tau, -tau]), real_vec(&[0.0, 2f64.sqrt()])],
        )
        .unwrap()
    }

    fn sigma_z() -> ComplexMatrix {
        real(2, &[1.0, 0.0, 0.0, -1.0])
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.max_abs_diff(b).unwrap() <= tol
    }

    #[test]
    fn validate_examples() {
        assert!(BiorthogonalSystem::orthonormal(4).validate().passed);
        let s = example_system();
        let report = s.validate();
        assert!(report.passed, "{report:?}");
        assert!((s.kappa()[0] - 1.0).abs() < 1e-15);
        assert!((s.kappa()[1] - 1.0).abs() < 1e-15);

        let t = tau_system(2.0);
        assert!(t.validate().passed);
        assert!((t.kappa()[0] - 2.0).abs() < 1e-15);
        assert!((t.kappa()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_explicit_rejections() {
        let err = BiorthogonalSystem::from_explicit(
            vec![real_vec(&[1.0, 0.0]), real_vec(&[0.0, 1.0])],
            vec![real_vec(&[0.0, 1.0]), real_vec(&[1.0, 0.0])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonPositiveKappa { index: 0, .. }));

        // complex normalizer is rejected, not re-phased
        let err = BiorthogonalSystem::from_explicit(
            vec![real_vec(&[1.0, 0.0]), real_vec(&[0.0, 1.0])],
            vec![
                ComplexVector::new(vec![C64::new(0.0, 1.0), ZERO]).unwrap(),
                real_vec(&[0.0, 1.0]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonPositiveKappa { index: 0, .. }));

        let err = BiorthogonalSystem::from_explicit(
            vec![real_vec(&[1.0, 0.0]), real_vec(&[H, H])],
            vec![real_vec(&[1.0, -0.5]), real_vec(&[0.0, 2f64.sqrt()])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::BiorthogonalityViolation { n: 0, m: 1, .. }));
    }

    #[test]
    fn from_explicit_normalizes_right_vectors_only() {
        let s = BiorthogonalSystem::from_explicit(
            vec![real_vec(&[3.0, 0.0]), real_vec(&[0.0, 1.0])],
            vec![real_vec(&[1.0, 0.0]), real_vec(&[0.0, 1.0])],
        )
        .unwrap();
        assert_eq!(s.u()[0], real_vec(&[1.0, 0.0]));
        assert_eq!(s.kappa(), &[1.0, 1.0]);
    }

    #[test]
    fn from_eigen_examples() {
        let v = real(2, &[1.0, -2.0, 0.0, -1.0]);
        let op = BiorthogonalOperator::from_eigen(&v, &KappaPolicy::AllOnes).unwrap();
        assert!(close(op.rep(), &sigma_z(), 1e-14));
        assert!(close(&op.to_computational(), &v, 1e-14));

        let v2 = real(2, &[2.0, -3.0, 0.0, -1.0]);
        let op = BiorthogonalOperator::from_eigen(&v2, &KappaPolicy::ModulusOfEigenvalue).unwrap();
        let k = op.system().kappa();
        assert!((k[0] - 2.0).abs() < 1e-14 && (k[1] - 1.0).abs() < 1e-14);
        assert!(close(op.rep(), &sigma_z(), 1e-14));
        let z = op.system().zeta();
        assert!(z[0].max_abs_diff(&real_vec(&[2.0, -2.0])).unwrap() < 1e-14);
        assert!(z[1].max_abs_diff(&real_vec(&[0.0, 2f64.sqrt()])).unwrap() < 1e-14);

        let (c, s) = (0.6, 0.8);
        let rot = real(2, &[c, -s, s, c]);
        for policy in [KappaPolicy::AllOnes, KappaPolicy::ModulusOfEigenvalue] {
            let op = BiorthogonalOperator::from_eigen(&rot, &policy).unwrap();
            assert!(op.system().kappa().iter().all(|k| (k - 1.0).abs() < 1e-12));
            assert!(op.rep().is_unitary(1e-12));
        }
    }

    #[test]
    fn from_eigen_errors() {
        let singular = real(2, &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            BiorthogonalOperator::from_eigen(&singular, &KappaPolicy::ModulusOfEigenvalue),
            Err(Error::SingularWithModulusPolicy { index: 1 })
        );
        assert!(BiorthogonalOperator::from_eigen(&singular, &KappaPolicy::AllOnes).is_ok());
        let v = real(2, &[1.0, -2.0, 0.0, -1.0]);
        assert!(matches!(
            BiorthogonalOperator::from_eigen(&v, &KappaPolicy::Explicit(vec![1.0])),
            Err(Error::ExplicitKappaInvalid { .. })
        ));
        assert!(matches!(
            BiorthogonalOperator::from_eigen(&v, &KappaPolicy::Explicit(vec![1.0, -2.0])),
            Err(Error::ExplicitKappaInvalid { .. })
        ));
        let jordan = real(2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            BiorthogonalOperator::from_eigen(&jordan, &KappaPolicy::AllOnes),
            Err(Error::Defective { .. })
        ));
    }

    #[test]
    fn metric_examples() {
        let id = ComplexMatrix::identity(2);
        assert!(close(&BiorthogonalSystem::orthonormal(2).metric(), &id, 0.0));
        let s = example_system();
        let f = s.metric();
        assert!(close(&f, &real(2, &[1.0, -1.0, -1.0, 3.0]), 1e-14));
        assert!(close(&f.matmul(&s.metric_inverse()).unwrap(), &id, 1e-14));
        assert!(close(&tau_system(2.0).unity(), &id, 1e-14));
    }

    #[test]
    fn associate_examples() {
        let s = example_system();
        let assoc = s.associate(&real_vec(&[1.0, 0.0])).unwrap();
        assert!(assoc.max_abs_diff(&real_vec(&[1.0, -1.0])).unwrap() < 1e-14);
        let t = tau_system(2.0);
        for n in 0..2 {
            let a = t.associate(&t.u()[n]).unwrap();
            assert!(a.max_abs_diff(&t.zeta()[n]).unwrap() < 1e-14);
        }
        let psi = ComplexVector::new(vec![C64::new(0.3, 0.4), C64::new(0.0, -0.5)]).unwrap();
        let o = BiorthogonalSystem::orthonormal(2);
        assert_eq!(o.associate(&psi).unwrap(), psi);
    }

    #[test]
    fn bi_inner_examples() {
        let t = tau_system(2.0);
        let psi = ComplexVector::new(vec![C64::new(0.3, 0.4), C64::new(0.0, -0.5)]).unwrap();
        let c = t.expand(&psi).unwrap().coeffs;
        let expected: f64 = c.iter().zip(t.kappa()).map(|(c, k)| k * c.norm_sqr()).sum();
        let got = t.bi_inner(&psi, &psi).unwrap();
        assert!((got - expected).norm() < 1e-14);
        assert!(got.re > 0.0);

        let o = BiorthogonalSystem::orthonormal(2);
        let phi = real_vec(&[0.6, 0.8]);
        assert!((o.bi_inner(&phi, &psi).unwrap() - phi.inner(&psi).unwrap()).norm() < 1e-15);
        assert!(t.bi_inner(&t.u()[0], &t.u()[1]).unwrap().norm() < 1e-14);
    }

    #[test]
    fn expand_examples() {
        let s = example_system();
        let (a0, a1) = (C64::new(0.2, -0.1), C64::new(0.5, 0.3));
        let psi = ComplexVector::new(vec![a0, a1]).unwrap();
        let c = s.expand(&psi).unwrap().coeffs;
        assert!((c[0] - (a0 - a1)).norm() < 1e-15);
        assert!((c[1] - a1 * 2f64.sqrt()).norm() < 1e-15);

        let c = s.expand(&s.u()[1]).unwrap().coeffs;
        assert!(c.max_abs_diff(&real_vec(&[0.0, 1.0])).unwrap() < 1e-15);

        let o = BiorthogonalSystem::orthonormal(2);
        assert_eq!(o.expand(&psi).unwrap().coeffs, psi);
    }

    #[test]
    fn to_computational_examples() {
        let op = BiorthogonalOperator::new(example_system(), sigma_z()).unwrap();
        assert!(close(&op.to_computational(), &real(2, &[1.0, -2.0, 0.0, -1.0]), 1e-14));

        for tau in [0.5, 1.0, 2.0] {
            let op = BiorthogonalOperator::new(tau_system(tau), sigma_z()).unwrap();
            let expected = real(2, &[tau, -(tau + 1.0), 0.0, -1.0]);
            assert!(close(&op.to_computational(), &expected, 1e-14));
        }

        let t = tau_system(2.0);
        let inv: Vec<C64> = t.kappa().iter().map(|k| C64::new(1.0 / k, 0.0)).collect();
        let unity = BiorthogonalOperator::new(t, ComplexMatrix::diag(&inv)).unwrap();
        assert!(close(&unity.to_computational(), &ComplexMatrix::identity(2), 1e-14));
    }

    #[test]
    fn bi_adjoint_and_classification() {
        let tol = Tolerances::default();
        let op = BiorthogonalOperator::new(example_system(), sigma_z()).unwrap();
        assert_eq!(op.bi_adjoint(), op);
        assert!(op.is_bi_hermitian(&tol));
        assert!(op.is_bi_unitary(&tol));
        assert!(op.pseudo_unitarity_residual() < 1e-13);

        let f = op.system().metric();
        let res = pseudo_hermiticity_residual(&op.to_computational(), &f).unwrap();
        assert!(res < 1e-13);

        let tau = BiorthogonalOperator::new(tau_system(2.0), sigma_z()).unwrap();
        assert!(!tau.is_bi_unitary(&tol));
        assert!(tau.rep().is_unitary(1e-14));

        let nil = BiorthogonalOperator::new(example_system(), real(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!(!nil.is_bi_hermitian(&tol));
        assert_eq!(nil.bi_adjoint().bi_adjoint(), nil);

        let id = BiorthogonalOperator::new(BiorthogonalSystem::orthonormal(2), ComplexMatrix::identity(2))
            .unwrap();
        assert!(id.is_bi_unitary(&tol));
    }

    #[test]
    fn apply_examples() {
        let op = BiorthogonalOperator::new(example_system(), sigma_z()).unwrap();
        let (a0, a1) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        let out = op.apply(&ComplexVector::new(vec![a0, a1]).unwrap()).unwrap();
        assert!((out[0] - (a0 - 2.0 * a1)).norm() < 1e-14);
        assert!((out[1] + a1).norm() < 1e-14);

        let tau = BiorthogonalOperator::new(tau_system(2.0), sigma_z()).unwrap();
        let out = tau.apply(&real_vec(&[1.0, 0.0])).unwrap();
        assert!(out.max_abs_diff(&real_vec(&[2.0, 0.0])).unwrap() < 1e-14);

        let t = tau_system(2.0);
        let inv: Vec<C64> = t.kappa().iter().map(|k| C64::new(1.0 / k, 0.0)).collect();
        let unity = BiorthogonalOperator::new(t, ComplexMatrix::diag(&inv)).unwrap();
        let psi = real_vec(&[0.6, 0.8]);
        assert!(unity.apply(&psi).unwrap().max_abs_diff(&psi).unwrap() < 1e-14);
    }
}
