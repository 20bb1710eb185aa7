use serde::Serialize;

use super::{biortho_plan_with, lcu_plan, pauli_decompose, qubits_for_dim, sznagy_plan_with, DilationPlan, Method};
use crate::biortho::{BiorthogonalOperator, KappaPolicy};
use crate::error::Result;
use crate::numkernel::{eig_with, singular_values, ComplexMatrix, ComplexVector, Tolerances};
use crate::qsim::{gate_census, GateCensus};

const CONTRACTION_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    /// `[re, im]` pairs; absent when the eigensolver rejected the matrix.
    pub eigenvalues: Option<Vec<[f64; 2]>>,
    pub moduli: Option<Vec<f64>>,
    pub eigen_error: Option<String>,
    pub sigma_max: f64,
    /// `sigma_max <= 1`.
    pub contraction: bool,
    /// Every eigenvalue has modulus at most one.
    pub spectral_contraction: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodReport {
    pub method: Method,
    pub applicable: bool,
    pub error: Option<String>,
    pub ancilla_qubits: Option<usize>,
    pub system_qubits: Option<usize>,
    pub census: Option<GateCensus>,
    pub predicted_probability: Option<f64>,
    pub simulated_probability: Option<f64>,
    pub fidelity: Option<f64>,
    pub scale: Option<f64>,
    pub notes: Vec<String>,
}

impl MethodReport {
    fn failed(method: Method, error: String) -> Self {
        Self {
            method,
            applicable: false,
            error: Some(error),
            ancilla_qubits: None,
            system_qubits: None,
            census: None,
            predicted_probability: None,
            simulated_probability: None,
            fidelity: None,
            scale: None,
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub dim: usize,
    pub classification: Classification,
    pub methods: Vec<MethodReport>,
}

impl ComparisonReport {
    pub fn method(&self, method: Method) -> Option<&MethodReport> {
        self.methods.iter().find(|m| m.method == method)
    }
}

pub fn compare(v: &ComplexMatrix, psi: &ComplexVector, policy: &KappaPolicy) -> Result<ComparisonReport> {
    compare_with(v, psi, policy, &Method::ALL, &Tolerances::default())
}

/// Runs each requested backend on `(V, psi)`. Per-method failures become report
/// entries; only an invalid `V` or `psi` (non-square data, bad dimension)
/// aborts.
pub fn compare_with(
    v: &ComplexMatrix,
    psi: &ComplexVector,
    policy: &KappaPolicy,
    methods: &[Method],
    tol: &Tolerances,
) -> Result<ComparisonReport> {
    qubits_for_dim(v.dim())?;
    if psi.dim() != v.dim() {
        return Err(crate::Error::DimensionMismatch {
            expected: v.dim(),
            found: psi.dim(),
        });
    }
    let classification = classify(v, tol)?;
    let methods = methods
        .iter()
        .map(|&m| run_method(m, v, psi, policy, tol))
        .collect();
    Ok(ComparisonReport {
        dim: v.dim(),
        classification,
        methods,
    })
}

pub(crate) fn classify(v: &ComplexMatrix, tol: &Tolerances) -> Result<Classification> {
    let sigma_max = singular_values(v)?[0];
    let contraction = sigma_max <= 1.0 + CONTRACTION_SLACK;
    let mut notes = Vec::new();
    let (eigenvalues, moduli, eigen_error, spectral) = match eig_with(v, tol) {
        Ok(es) => {
            let moduli: Vec<f64> = es.eigenvalues.iter().map(|l| l.norm()).collect();
            let spectral = moduli.iter().all(|&m| m <= 1.0 + CONTRACTION_SLACK);
            (
                Some(es.eigenvalues.iter().map(|l| [l.re, l.im]).collect()),
                Some(moduli),
                None,
                Some(spectral),
            )
        }
        Err(e) => (None, None, Some(e.to_string()), None),
    };
    if spectral == Some(true) && !contraction {
        notes.push(format!(
            "all eigenvalue moduli are at most 1 but the operator norm is {sigma_max:.12}"
        ));
    }
    Ok(Classification {
        eigenvalues,
        moduli,
        eigen_error,
        sigma_max,
        contraction,
        spectral_contraction: spectral,
        notes,
    })
}

fn run_method(
    method: Method,
    v: &ComplexMatrix,
    psi: &ComplexVector,
    policy: &KappaPolicy,
    tol: &Tolerances,
) -> MethodReport {
    let plan = match build_plan(method, v, policy, tol) {
        Ok(p) => p,
        Err(e) => return MethodReport::failed(method, e.to_string()),
    };
    let mut report = MethodReport {
        method,
        applicable: true,
        error: None,
        ancilla_qubits: Some(plan.ancilla_qubits),
        system_qubits: Some(plan.system_qubits),
        census: Some(gate_census(&plan.circuit)),
        predicted_probability: None,
        simulated_probability: None,
        fidelity: None,
        scale: None,
        notes: Vec::new(),
    };
    match plan.run(psi) {
        Ok(out) => {
            report.predicted_probability = Some(out.predicted_probability);
            report.simulated_probability = Some(out.simulated_probability);
            report.fidelity = Some(out.fidelity_vs_oracle);
            report.scale = Some(out.scale);
            if method == Method::Lcu {
                let amplitude_level = out.predicted_probability * plan.scale;
                report.notes.push(format!(
                    "estimate |V psi|^2/s = {amplitude_level:.12} is a factor s = {:.12} above the exact branch probability |V psi|^2/s^2",
                    plan.scale
                ));
            }
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

fn build_plan(method: Method, v: &ComplexMatrix, policy: &KappaPolicy, tol: &Tolerances) -> Result<DilationPlan> {
    match method {
        Method::Biortho => {
            let op = BiorthogonalOperator::from_eigen_with(v, policy, tol)?;
            biortho_plan_with(&op, tol)
        }
        Method::Lcu => lcu_plan(&pauli_decompose(v)?),
        Method::SzNagy => sznagy_plan_with(v, tol),
    }
}
