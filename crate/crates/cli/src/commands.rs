//! `analyze`, `dilate` and `simulate`. Each takes parsed inputs and returns a
//! serializable report; file handling lives in the binary.

use biodilate::biortho::{BiorthogonalOperator, KappaPolicy, ValidationReport};
use biodilate::dilate::{
    biortho_plan_with, compare_with, lcu_plan, pauli_decompose, sznagy_plan_with, Classification, DilationPlan,
    Method,
};
use biodilate::numkernel::{eig_with, ComplexMatrix, ComplexVector, Tolerances};
use biodilate::biortho::pseudo_hermiticity_residual;
use biodilate::qsim::{Circuit, StateVector};
use serde::Serialize;

use crate::error::CliResult;
use crate::io::{gate_records, CircuitBundle, CircuitFile, Pair, PostSelection, SCHEMA};
use crate::report::{vector_json, InputDigest, MatrixJson, RunReport, ToolInfo, TOOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaChoice {
    #[default]
    Modulus,
    Ones,
}

impl KappaChoice {
    pub fn policy(self) -> KappaPolicy {
        match self {
            KappaChoice::Modulus => KappaPolicy::ModulusOfEigenvalue,
            KappaChoice::Ones => KappaPolicy::AllOnes,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KappaChoice::Modulus => "modulus",
            KappaChoice::Ones => "ones",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemJson {
    pub kappa: Vec<f64>,
    /// Right vectors `u_n`.
    pub u: Vec<Vec<Pair>>,
    /// Dual vectors `zeta_n`.
    pub zeta: Vec<Vec<Pair>>,
    pub validation: ValidationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorJson {
    pub system: SystemJson,
    pub rep: MatrixJson,
    pub metric: MatrixJson,
    pub rep_unitarity_deviation: f64,
    pub bi_unitary: bool,
    pub pseudo_unitarity_residual: f64,
    pub bi_hermitian: bool,
    pub pseudo_hermiticity_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub tolerances: Tolerances,
    pub kappa_policy: &'static str,
    pub dim: usize,
    pub eigenvalues: Vec<Pair>,
    pub eigenvector_condition: f64,
    pub operator: OperatorJson,
    pub classification: Classification,
}

pub fn operator_json(op: &BiorthogonalOperator, tol: &Tolerances) -> CliResult<OperatorJson> {
    let sys = op.system();
    let f = sys.metric();
    let v = op.to_computational();
    Ok(OperatorJson {
        system: SystemJson {
            kappa: sys.kappa().to_vec(),
            u: sys.u().iter().map(vector_json).collect(),
            zeta: sys.zeta().iter().map(vector_json).collect(),
            validation: sys.validate_with(tol),
        },
        rep: MatrixJson::from(op.rep()),
        metric: MatrixJson::from(&f),
        rep_unitarity_deviation: op.rep().unitarity_deviation(),
        bi_unitary: op.is_bi_unitary(tol),
        pseudo_unitarity_residual: op.pseudo_unitarity_residual(),
        bi_hermitian: op.is_bi_hermitian(tol),
        pseudo_hermiticity_residual: pseudo_hermiticity_residual(&v, &f)?,
    })
}

/// Eigendata, the biorthogonal system for `kappa`, metric and residuals.
pub fn analyze(
    v: &ComplexMatrix,
    inputs: Vec<InputDigest>,
    kappa: KappaChoice,
    tol: &Tolerances,
) -> CliResult<AnalysisReport> {
    let es = eig_with(v, tol)?;
    let op = BiorthogonalOperator::from_eigen_with(v, &kappa.policy(), tol)?;
    let psi = ComplexVector::basis(v.dim(), 0);
    let classification = compare_with(v, &psi, &kappa.policy(), &[], tol)?.classification;
    Ok(AnalysisReport {
        schema: SCHEMA,
        tool: TOOL,
        command: "analyze",
        inputs,
        tolerances: *tol,
        kappa_policy: kappa.name(),
        dim: v.dim(),
        eigenvalues: es.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
        eigenvector_condition: es.condition,
        operator: operator_json(&op, tol)?,
        classification,
    })
}

pub fn dilate(
    v: &ComplexMatrix,
    psi: &ComplexVector,
    inputs: Vec<InputDigest>,
    methods: &[Method],
    kappa: KappaChoice,
    tol: &Tolerances,
    timestamp: Option<String>,
) -> CliResult<RunReport> {
    let report = compare_with(v, psi, &kappa.policy(), methods, tol)?;
    Ok(RunReport {
        schema: SCHEMA,
        tool: TOOL,
        command: "dilate",
        inputs,
        seed: None,
        tolerances: *tol,
        kappa_policy: kappa.name(),
        dim: report.dim,
        classification: report.classification,
        methods: report.methods,
        timestamp,
    })
}

pub fn build_plan(method: Method, v: &ComplexMatrix, kappa: KappaChoice, tol: &Tolerances) -> CliResult<DilationPlan> {
    Ok(match method {
        Method::Biortho => biortho_plan_with(&BiorthogonalOperator::from_eigen_with(v, &kappa.policy(), tol)?, tol)?,
        Method::Lcu => lcu_plan(&pauli_decompose(v)?)?,
        Method::SzNagy => sznagy_plan_with(v, tol)?,
    })
}

/// Circuits as simulated for `psi`, one per applicable method. The
/// biorthogonal circuit carries the preparation gate for this `psi`.
pub fn export_circuits(
    v: &ComplexMatrix,
    psi: &ComplexVector,
    methods: &[Method],
    kappa: KappaChoice,
    tol: &Tolerances,
) -> CircuitBundle {
    let mut circuits = Vec::new();
    for &method in methods {
        let Ok(plan) = build_plan(method, v, kappa, tol) else {
            continue;
        };
        let Ok(out) = plan.run(psi) else {
            continue;
        };
        circuits.push(CircuitFile {
            schema: Some(SCHEMA.into()),
            method: method.name().into(),
            num_qubits: out.circuit.num_qubits(),
            input_register: plan.input_register.clone(),
            postselect: PostSelection {
                register: plan.postselect_register.clone(),
                value: plan.postselect_value,
            },
            scale: out.scale,
            gates: gate_records(&out.circuit),
        });
    }
    CircuitBundle {
        schema: SCHEMA.into(),
        circuits,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationEntry {
    pub method: String,
    pub probability: Option<f64>,
    pub output_state: Option<Vec<Pair>>,
    /// Unnormalized branch times the recorded scale.
    pub rescaled_branch: Option<Vec<Pair>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub results: Vec<SimulationEntry>,
}

/// Runs imported circuits on `psi` and post-selects as recorded.
pub fn simulate(circuits: &[(CircuitFile, Circuit)], psi: &ComplexVector, inputs: Vec<InputDigest>) -> SimulationReport {
    let results = circuits
        .iter()
        .map(|(file, circuit)| {
            let attempt = || -> biodilate::Result<_> {
                let state = StateVector::embed(psi, &file.input_register, circuit.num_qubits())?;
                let post = state
                    .run(circuit)?
                    .postselect(&file.postselect.register, file.postselect.value)?;
                let rescaled = post.unnormalized().scale(biodilate::C64::new(file.scale, 0.0));
                Ok((post.probability, post.state.amplitudes().clone(), rescaled))
            };
            match attempt() {
                Ok((p, out, rescaled)) => SimulationEntry {
                    method: file.method.clone(),
                    probability: Some(p),
                    output_state: Some(vector_json(&out)),
                    rescaled_branch: Some(vector_json(&rescaled)),
                    error: None,
                },
                Err(e) => SimulationEntry {
                    method: file.method.clone(),
                    probability: None,
                    output_state: None,
                    rescaled_branch: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    SimulationReport {
        schema: SCHEMA,
        tool: TOOL,
        command: "simulate",
        inputs,
        results,
    }
}
