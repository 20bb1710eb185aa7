use super::{qubits_for_dim, DilationOutcome, DilationPlan, Method, PlanDetail};
use crate::error::{Error, Result};
use crate::numkernel::{fidelity, hermitian_eig, singular_values, sqrt_psd_with, ComplexMatrix, ComplexVector, Tolerances, C64};
use crate::qsim::{register, Circuit, Gate, GateLabel};

const CONTRACTION_SLACK: f64 = 1e-10;
const BLOCK_TOL: f64 = 1e-8;

pub fn sznagy_plan(v: &ComplexMatrix) -> Result<DilationPlan> {
    sznagy_plan_with(v, &Tolerances::default())
}

/// One ancilla (qubit 0) and the unitary `[[V, D_{V^†}], [D_V, -V^†]]` with
/// defect operators `D_V = sqrt(1 - V^† V)`.
pub fn sznagy_plan_with(v: &ComplexMatrix, tol: &Tolerances) -> Result<DilationPlan> {
    let dim = v.dim();
    let n = qubits_for_dim(dim)?;
    let sigma_max = singular_values(v)?[0];
    if sigma_max > 1.0 + CONTRACTION_SLACK {
        return Err(Error::NotAContraction { sigma_max });
    }
    let id = ComplexMatrix::identity(dim);
    let vd = v.adjoint();
    let defect_arg = id.sub(&vd.matmul(v)?)?;
    let d_v = sqrt_psd_with(&defect_arg, tol)?;
    let d_vd = sqrt_psd_with(&id.sub(&v.matmul(&vd)?)?, tol)?;
    let defect_spectrum = hermitian_eig(&defect_arg)?.values;

    let big = 2 * dim;
    let mut data = vec![C64::new(0.0, 0.0); big * big];
    for i in 0..dim {
        for j in 0..dim {
            data[i * big + j] = v[(i, j)];
            data[i * big + dim + j] = d_vd[(i, j)];
            data[(dim + i) * big + j] = d_v[(i, j)];
            data[(dim + i) * big + dim + j] = -vd[(i, j)];
        }
    }
    let block = ComplexMatrix::new(big, data)?;
    let mut circuit = Circuit::new(n + 1)?;
    circuit.push(Gate::with_tolerance(
        block,
        register(0, n + 1),
        Vec::new(),
        GateLabel::Dilation,
        BLOCK_TOL,
    )?)?;

    Ok(DilationPlan {
        method: Method::SzNagy,
        circuit,
        system_qubits: n,
        ancilla_qubits: 1,
        input_register: register(1, n),
        postselect_register: vec![0],
        postselect_value: 0,
        scale: 1.0,
        target: v.clone(),
        detail: PlanDetail::SzNagy {
            sigma_max,
            defect_spectrum,
        },
    })
}

pub fn sznagy_run(plan: &DilationPlan, psi: &ComplexVector) -> Result<DilationOutcome> {
    plan.expect_method(Method::SzNagy)?;
    let (output_state, branch, simulated_probability) = plan.simulate(&plan.circuit, psi)?;
    let v_psi = plan.target.matvec(psi)?;
    let fidelity_vs_oracle = fidelity(&output_state, &v_psi)?;
    Ok(DilationOutcome {
        output_state,
        branch,
        simulated_probability,
        predicted_probability: v_psi.norm_sqr(),
        fidelity_vs_oracle,
        scale: 1.0,
        circuit: plan.circuit.clone(),
    })
}
