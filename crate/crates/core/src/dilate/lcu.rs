use super::{qubits_for_dim, DilationOutcome, DilationPlan, Method, PlanDetail};
use crate::error::{Error, Result};
use crate::numkernel::{fidelity, ComplexMatrix, ComplexVector, C64, ONE, ZERO};
use crate::qsim::{controlled_on_value, register, state_prep_unitary, Circuit, Gate, GateLabel};

const DROP_BELOW: f64 = 1e-12;
const SUMMAND_TOL: f64 = 1e-10;

/// One term `w U` of `V = sum_i w_i U_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarySummand {
    pub weight: f64,
    pub unitary: ComplexMatrix,
    pub label: Option<String>,
}

/// Pauli strings in `I, X, Y, Z` order with qubit 0 leftmost. Each nonzero
/// coefficient `alpha` becomes weight `|alpha|` on `(alpha / |alpha|) P`.
pub fn pauli_decompose(v: &ComplexMatrix) -> Result<Vec<UnitarySummand>> {
    let dim = v.dim();
    let n = qubits_for_dim(dim)?;
    let mut out = Vec::new();
    for code in 0..(1usize << (2 * n)) {
        let letters: Vec<u8> = (0..n).map(|q| ((code >> (2 * (n - 1 - q))) & 3) as u8).collect();
        // P|k> = phase(k) |k ^ flip>
        let flip = letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == 1 || l == 2)
            .fold(0usize, |acc, (q, _)| acc | 1 << (n - 1 - q));
        let phase = |k: usize| -> C64 {
            let mut p = ONE;
            for (q, &l) in letters.iter().enumerate() {
                let bit = (k >> (n - 1 - q)) & 1;
                p *= match (l, bit) {
                    (2, 0) => C64::new(0.0, 1.0),
                    (2, _) => C64::new(0.0, -1.0),
                    (3, 1) => C64::new(-1.0, 0.0),
                    _ => ONE,
                };
            }
            p
        };
        let mut tr = ZERO;
        for k in 0..dim {
            tr += phase(k).conj() * v[(k ^ flip, k)];
        }
        let alpha = tr / dim as f64;
        let weight = alpha.norm();
        if weight <= DROP_BELOW {
            continue;
        }
        let unit = alpha / weight;
        let mut data = vec![ZERO; dim * dim];
        for k in 0..dim {
            data[(k ^ flip) * dim + k] = unit * phase(k);
        }
        let label: String = letters.iter().map(|&l| b"IXYZ"[l as usize] as char).collect();
        out.push(UnitarySummand {
            weight,
            unitary: ComplexMatrix::new(dim, data)?,
            label: Some(label),
        });
    }
    if out.is_empty() {
        return Err(Error::Empty);
    }
    Ok(out)
}

/// PREP on `ceil(log2 L)` ancillas, SELECT applying `U_i` when the ancillas
/// hold `i`, then PREP^†. Ancillas come first, the system register after.
pub fn lcu_plan(summands: &[UnitarySummand]) -> Result<DilationPlan> {
    let first = summands.first().ok_or(Error::Empty)?;
    let dim = first.unitary.dim();
    for (index, s) in summands.iter().enumerate() {
        if !(s.weight > 0.0 && s.weight.is_finite())
            || s.unitary.dim() != dim
            || !s.unitary.is_unitary(SUMMAND_TOL)
        {
            return Err(Error::NonUnitarySummand { index });
        }
    }
    let n = qubits_for_dim(dim)?;
    let m = summands.len().next_power_of_two().trailing_zeros() as usize;
    let ancilla = register(0, m);
    let system = register(m, n);

    let total: f64 = summands.iter().map(|s| s.weight).sum();
    let mut amps = vec![ZERO; 1 << m];
    for (a, s) in amps.iter_mut().zip(summands) {
        *a = C64::new((s.weight / total).sqrt(), 0.0);
    }
    let prep_amplitudes = ComplexVector::new(amps)?.normalized()?;

    let mut circuit = Circuit::new(m + n)?;
    let prep = state_prep_unitary(&prep_amplitudes)?;
    if m > 0 {
        circuit.push(Gate::new(prep.clone(), ancilla.clone(), Vec::new(), GateLabel::Prep)?)?;
    }
    let mut target = ComplexMatrix::zeros(dim);
    for (i, s) in summands.iter().enumerate() {
        circuit.push(controlled_on_value(&ancilla, i, &s.unitary, &system, GateLabel::Select)?)?;
        target = target.add(&s.unitary.scale(C64::new(s.weight, 0.0)))?;
    }
    if m > 0 {
        circuit.push(Gate::new(prep.adjoint(), ancilla.clone(), Vec::new(), GateLabel::Prep)?)?;
    }

    Ok(DilationPlan {
        method: Method::Lcu,
        circuit,
        system_qubits: n,
        ancilla_qubits: m,
        input_register: system,
        postselect_register: ancilla,
        postselect_value: 0,
        scale: total,
        target,
        detail: PlanDetail::Lcu {
            summands: summands.to_vec(),
            prep_amplitudes,
        },
    })
}

pub fn lcu_run(plan: &DilationPlan, psi: &ComplexVector) -> Result<DilationOutcome> {
    plan.expect_method(Method::Lcu)?;
    let (output_state, branch, simulated_probability) = plan.simulate(&plan.circuit, psi)?;
    let v_psi = plan.target.matvec(psi)?;
    let predicted_probability = v_psi.norm_sqr() / (plan.scale * plan.scale);
    let fidelity_vs_oracle = fidelity(&output_state, &v_psi)?;
    Ok(DilationOutcome {
        output_state,
        branch,
        simulated_probability,
        predicted_probability,
        fidelity_vs_oracle,
        scale: plan.scale,
        circuit: plan.circuit.clone(),
    })
}
