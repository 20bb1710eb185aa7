//! Exact dense statevector simulation.
//!
//! Qubit 0 is the most significant bit of a basis index; registers listed as
//! qubit slices are read big-endian in the order given.

mod builders;
mod census;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, ComplexVector, C64, ZERO};

pub use builders::{
    controlled_on_value, gates, hadamard_layer, qft_circuit, register, state_prep_unitary,
};
pub use census::{gate_census, GateCensus};

const NORM_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-10;
const MIN_BRANCH_PROBABILITY: f64 = 1e-14;
/// Hard ceiling on register size for dense simulation.
pub const MAX_QUBITS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: ComplexVector,
}

impl StateVector {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        Self {
            num_qubits,
            amplitudes: ComplexVector::basis(1 << num_qubits, index),
        }
    }

    pub fn from_amplitudes(amplitudes: ComplexVector) -> Result<Self> {
        let num_qubits = crate::numkernel::log2_exact(amplitudes.dim()).ok_or(
            Error::NotPowerOfTwoDim {
                dim: amplitudes.dim(),
            },
        )?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::UnnormalizedTarget { norm });
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Places `psi` on `register` (big-endian) with every other qubit in `|0>`.
    pub fn embed(psi: &ComplexVector, register: &[usize], num_qubits: usize) -> Result<Self> {
        if psi.dim() != 1 << register.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << register.len(),
                found: psi.dim(),
            });
        }
        check_register(register, num_qubits)?;
        let norm = psi.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::UnnormalizedTarget { norm });
        }
        let mut amps = vec![ZERO; 1 << num_qubits];
        for (k, a) in psi.iter().enumerate() {
            amps[scatter_bits(k, register, num_qubits)] = *a;
        }
        Ok(Self {
            num_qubits,
            amplitudes: ComplexVector::from_vec(amps),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn apply(&self, gate: &Gate) -> Result<StateVector> {
        let mut amps = self.amplitudes.clone().into_vec();
        apply_in_place(&mut amps, self.num_qubits, gate)?;
        Ok(Self {
            num_qubits: self.num_qubits,
            amplitudes: ComplexVector::from_vec(amps),
        })
    }

    pub fn run(&self, circuit: &Circuit) -> Result<StateVector> {
        if circuit.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: circuit.num_qubits,
                found: self.num_qubits,
            });
        }
        let mut amps = self.amplitudes.clone().into_vec();
        for gate in &circuit.gates {
            apply_in_place(&mut amps, self.num_qubits, gate)?;
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            amplitudes: ComplexVector::from_vec(amps),
        })
    }

    /// Projects `register` onto `value`, returning the renormalized state of the
    /// remaining qubits (in their original order) and the branch probability.
    pub fn postselect(&self, register: &[usize], value: usize) -> Result<PostSelectionResult> {
        check_register(register, self.num_qubits)?;
        if register.len() < usize::BITS as usize && value >= 1 << register.len() {
            return Err(Error::ValueOutOfRange {
                value,
                width: register.len(),
            });
        }
        let rest: Vec<usize> = (0..self.num_qubits)
            .filter(|q| !register.contains(q))
            .collect();
        let fixed = scatter_bits(value, register, self.num_qubits);
        let mut branch = Vec::with_capacity(1 << rest.len());
        for k in 0..(1usize << rest.len()) {
            branch.push(self.amplitudes[fixed | scatter_bits(k, &rest, self.num_qubits)]);
        }
        let probability: f64 = branch.iter().map(|z| z.norm_sqr()).sum();
        if probability < MIN_BRANCH_PROBABILITY {
            return Err(Error::ZeroProbabilityBranch { probability });
        }
        let scale = 1.0 / probability.sqrt();
        let amplitudes = ComplexVector::from_vec(branch.into_iter().map(|z| z * scale).collect());
        Ok(PostSelectionResult {
            state: StateVector {
                num_qubits: rest.len(),
                amplitudes,
            },
            probability,
        })
    }
}

/// Free-function form of [`StateVector::apply`].
pub fn apply(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    state.apply(gate)
}

/// Free-function form of [`StateVector::run`].
pub fn run(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    state.run(circuit)
}

/// Free-function form of [`StateVector::postselect`].
pub fn postselect(state: &StateVector, register: &[usize], value: usize) -> Result<PostSelectionResult> {
    state.postselect(register, value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PostSelectionResult {
    pub state: StateVector,
    pub probability: f64,
}

impl PostSelectionResult {
    /// The projected branch before renormalization.
    pub fn unnormalized(&self) -> ComplexVector {
        self.state
            .amplitudes
            .scale(C64::new(self.probability.sqrt(), 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateLabel {
    Prep,
    Rep,
    ControlledBasis,
    Qft,
    Select,
    Dilation,
    Other,
}

/// A unitary on `targets`, applied only where every control qubit holds its required bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    matrix: ComplexMatrix,
    targets: Vec<usize>,
    controls: Vec<(usize, bool)>,
    label: GateLabel,
}

impl Gate {
    pub fn new(
        matrix: ComplexMatrix,
        targets: Vec<usize>,
        controls: Vec<(usize, bool)>,
        label: GateLabel,
    ) -> Result<Self> {
        Self::with_tolerance(matrix, targets, controls, label, UNITARY_TOL)
    }

    pub fn with_tolerance(
        matrix: ComplexMatrix,
        targets: Vec<usize>,
        controls: Vec<(usize, bool)>,
        label: GateLabel,
        unitary_tol: f64,
    ) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::InvalidGate {
                reason: "no target qubits".into(),
            });
        }
        if targets.len() > MAX_QUBITS || matrix.dim() != 1 << targets.len() {
            return Err(Error::DimensionMismatch {
                expected: 1usize.checked_shl(targets.len() as u32).unwrap_or(0),
                found: matrix.dim(),
            });
        }
        let mut seen: Vec<usize> = targets.clone();
        seen.extend(controls.iter().map(|(q, _)| *q));
        let mut sorted = seen.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seen.len() {
            return Err(Error::InvalidGate {
                reason: "repeated qubit among targets and controls".into(),
            });
        }
        let deviation = matrix.unitarity_deviation();
        if deviation > unitary_tol {
            return Err(Error::NonUnitaryGate { deviation });
        }
        Ok(Self {
            matrix,
            targets,
            controls,
            label,
        })
    }

    pub fn single(matrix: ComplexMatrix, target: usize, label: GateLabel) -> Result<Self> {
        Self::new(matrix, vec![target], Vec::new(), label)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn controls(&self) -> &[(usize, bool)] {
        &self.controls
    }

    pub fn label(&self) -> GateLabel {
        self.label
    }

    pub(crate) fn with_matrix(&self, matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix, self.targets.clone(), self.controls.clone(), self.label)
    }

    fn max_qubit(&self) -> usize {
        self.targets
            .iter()
            .chain(self.controls.iter().map(|(q, _)| q))
            .copied()
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::IndexOutOfRange {
                index: num_qubits,
                num_qubits: MAX_QUBITS,
            });
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        let q = gate.max_qubit();
        if q >= self.num_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<&mut Self> {
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Copy of the circuit with gate `index` given a new matrix.
    pub(crate) fn replace_matrix(&self, index: usize, matrix: ComplexMatrix) -> Result<Self> {
        let mut out = self.clone();
        out.gates[index] = self.gates[index].with_matrix(matrix)?;
        Ok(out)
    }

    /// Dense unitary of the whole circuit, column by column.
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        let dim = 1usize << self.num_qubits;
        let columns = (0..dim)
            .map(|k| StateVector::basis(self.num_qubits, k).run(self).map(|s| s.amplitudes))
            .collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_columns(&columns)
    }
}

fn check_register(register: &[usize], num_qubits: usize) -> Result<()> {
    for (i, &q) in register.iter().enumerate() {
        if q >= num_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                num_qubits,
            });
        }
        if register[..i].contains(&q) {
            return Err(Error::InvalidGate {
                reason: format!("qubit {q} repeated in register"),
            });
        }
    }
    Ok(())
}

#[inline]
fn bit_of(qubit: usize, num_qubits: usize) -> usize {
    1 << (num_qubits - 1 - qubit)
}

/// Basis index whose `register` bits encode `value` big-endian, all others zero.
fn scatter_bits(value: usize, register: &[usize], num_qubits: usize) -> usize {
    let width = register.len();
    register
        .iter()
        .enumerate()
        .filter(|(j, _)| value >> (width - 1 - j) & 1 == 1)
        .fold(0, |acc, (_, &q)| acc | bit_of(q, num_qubits))
}

fn apply_in_place(amps: &mut [C64], num_qubits: usize, gate: &Gate) -> Result<()> {
    let q = gate.max_qubit();
    if q >= num_qubits {
        return Err(Error::IndexOutOfRange {
            index: q,
            num_qubits,
        });
    }
    let k = gate.targets.len();
    let block = 1usize << k;
    let offsets: Vec<usize> = (0..block)
        .map(|p| scatter_bits(p, &gate.targets, num_qubits))
        .collect();
    let target_mask = offsets[block - 1];
    let (control_mask, control_value) =
        gate.controls
            .iter()
            .fold((0, 0), |(mask, value), &(q, bit)| {
                let b = bit_of(q, num_qubits);
                (mask | b, if bit { value | b } else { value })
            });
    let m = gate.matrix.as_slice();
    let mut gathered = vec![ZERO; block];
    for base in 0..amps.len() {
        if base & target_mask != 0 || base & control_mask != control_value {
            continue;
        }
        for (g, off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base | off];
        }
        for (row, off) in offsets.iter().enumerate() {
            let r = &m[row * block..(row + 1) * block];
            amps[base | off] = r.iter().zip(&gathered).map(|(a, b)| a * b).sum();
        }
    }
    Ok(())
}
