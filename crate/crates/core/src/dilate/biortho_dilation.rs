use super::{qubits_for_dim, DilationOutcome, DilationPlan, Method, PlanDetail};
use crate::biortho::BiorthogonalOperator;
use crate::error::{Error, Result};
use crate::numkernel::{fidelity, ComplexMatrix, ComplexVector, Tolerances, C64};
use crate::qsim::{controlled_on_value, qft_circuit, register, state_prep_unitary, Circuit, Gate, GateLabel};

pub fn biortho_plan(op: &BiorthogonalOperator) -> Result<DilationPlan> {
    biortho_plan_with(op, &Tolerances::default())
}

/// Circuit on two `N`-qubit registers: amplitude preparation and the unitary
/// representation on the first, one controlled basis preparation `|0> -> |u_n>`
/// on the second per value `n` of the first, then a QFT on the first. Keeping
/// the first register at zero leaves `V|psi> / (c 2^{N/2})` on the second.
pub fn biortho_plan_with(op: &BiorthogonalOperator, tol: &Tolerances) -> Result<DilationPlan> {
    let deviation = op.rep().unitarity_deviation();
    if deviation > tol.abs {
        return Err(Error::NonUnitaryRepresentation { deviation });
    }
    let dim = op.system().dim();
    let n = qubits_for_dim(dim)?;
    let first = register(0, n);
    let second = register(n, n);

    let mut circuit = Circuit::new(2 * n)?;
    circuit.push(Gate::new(
        ComplexMatrix::identity(dim),
        first.clone(),
        Vec::new(),
        GateLabel::Prep,
    )?)?;
    circuit.push(Gate::new(op.rep().clone(), first.clone(), Vec::new(), GateLabel::Rep)?)?;
    for (value, u) in op.system().u().iter().enumerate() {
        let prep = state_prep_unitary(u)?;
        if prep == ComplexMatrix::identity(dim) {
            // u_n is already |0...0>
            continue;
        }
        circuit.push(controlled_on_value(
            &first,
            value,
            &prep,
            &second,
            GateLabel::ControlledBasis,
        )?)?;
    }
    circuit.extend(&qft_circuit(2 * n, &first)?)?;

    Ok(DilationPlan {
        method: Method::Biortho,
        circuit,
        system_qubits: n,
        ancilla_qubits: n,
        input_register: first.clone(),
        postselect_register: first,
        postselect_value: 0,
        scale: ((1usize << n) as f64).sqrt(),
        target: op.to_computational(),
        detail: PlanDetail::Biortho {
            operator: op.clone(),
        },
    })
}

pub fn biortho_run(plan: &DilationPlan, psi: &ComplexVector) -> Result<DilationOutcome> {
    plan.expect_method(Method::Biortho)?;
    let PlanDetail::Biortho { operator } = &plan.detail else {
        unreachable!("biortho plan carries its operator");
    };
    let system = operator.system();
    let expansion = system.expand(psi)?;
    let weighted = ComplexVector::new(
        expansion
            .coeffs
            .iter()
            .zip(system.kappa())
            .map(|(c, k)| c * k)
            .collect(),
    )?;
    let c = weighted.norm();
    let prepared = weighted.scale(C64::new(1.0 / c, 0.0));
    // maps psi -> e_0 -> prepared
    let prep = state_prep_unitary(&prepared)?.matmul(&state_prep_unitary(psi)?.adjoint())?;
    let circuit = plan.circuit.replace_matrix(0, prep)?;

    let (output_state, branch, simulated_probability) = plan.simulate(&circuit, psi)?;

    let v_psi = plan.target.matvec(psi)?;
    let dim = (1usize << plan.system_qubits) as f64;
    let predicted_probability = v_psi.norm_sqr() / (c * c * dim);
    let oracle = operator.apply(psi)?;
    let fidelity_vs_oracle = fidelity(&output_state, &oracle)?;

    Ok(DilationOutcome {
        output_state,
        branch,
        simulated_probability,
        predicted_probability,
        fidelity_vs_oracle,
        scale: c * plan.scale,
        circuit,
    })
}
