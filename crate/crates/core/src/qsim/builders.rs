use std::f64::consts::PI;

use super::{Circuit, Gate, GateLabel};
use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, ComplexVector, C64, ONE, ZERO};

/// Fixed gate matrices.
pub mod gates {
    use super::*;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("finite")
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO])
            .expect("finite")
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]).expect("finite")
    }

    pub fn h() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real(2, &[s, s, s, -s]).expect("finite")
    }

    /// `diag(1, e^{i theta})`.
    pub fn phase(theta: f64) -> ComplexMatrix {
        ComplexMatrix::diag(&[ONE, C64::from_polar(1.0, theta)])
    }

    pub fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real(
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
        .expect("finite")
    }
}

/// Qubits `start..start + len`.
pub fn register(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

/// `|n> -> 2^{-N/2} sum_k e^{2 pi i n k / 2^N} |k>` on `reg` (first qubit most
/// significant), including the closing qubit-reversal swaps.
pub fn qft_circuit(num_qubits: usize, reg: &[usize]) -> Result<Circuit> {
    if reg.is_empty() {
        return Err(Error::Empty);
    }
    let mut c = Circuit::new(num_qubits)?;
    let n = reg.len();
    for j in 0..n {
        c.push(Gate::single(gates::h(), reg[j], GateLabel::Qft)?)?;
        for k in (j + 1)..n {
            let theta = 2.0 * PI / (1u64 << (k - j + 1)) as f64;
            c.push(Gate::new(
                gates::phase(theta),
                vec![reg[j]],
                vec![(reg[k], true)],
                GateLabel::Qft,
            )?)?;
        }
    }
    for i in 0..n / 2 {
        c.push(Gate::new(
            gates::swap(),
            vec![reg[i], reg[n - 1 - i]],
            Vec::new(),
            GateLabel::Qft,
        )?)?;
    }
    Ok(c)
}

/// `H` on every qubit of `reg`.
pub fn hadamard_layer(num_qubits: usize, reg: &[usize]) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits)?;
    for &q in reg {
        c.push(Gate::single(gates::h(), q, GateLabel::Other)?)?;
    }
    Ok(c)
}

/// Applies `u` on `targets` exactly when `controls` (big-endian) hold `value`.
pub fn controlled_on_value(
    controls: &[usize],
    value: usize,
    u: &ComplexMatrix,
    targets: &[usize],
    label: GateLabel,
) -> Result<Gate> {
    let width = controls.len();
    if width >= usize::BITS as usize || value >> width != 0 {
        return Err(Error::ValueOutOfRange { value, width });
    }
    let bits = controls
        .iter()
        .enumerate()
        .map(|(j, &q)| (q, value >> (width - 1 - j) & 1 == 1))
        .collect();
    Gate::new(u.clone(), targets.to_vec(), bits, label)
}

/// A unitary whose first column is `target`: a Householder reflection taking
/// `e_0` to `target` up to the phase of `target[0]`, times that phase.
pub fn state_prep_unitary(target: &ComplexVector) -> Result<ComplexMatrix> {
    let norm = target.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::UnnormalizedTarget { norm });
    }
    let dim = target.dim();
    let t0 = target[0];
    let phase = if t0.norm() == 0.0 { ONE } else { t0 / t0.norm() };
    // rotated target has a real non-negative first entry
    let t: Vec<C64> = target.iter().map(|z| z * phase.conj()).collect();
    let mut w = t.iter().map(|z| -z).collect::<Vec<_>>();
    w[0] += ONE;
    let wnorm2: f64 = w.iter().map(|z| z.norm_sqr()).sum();
    if wnorm2 < 1e-30 {
        return Ok(ComplexMatrix::identity(dim).scale(phase));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let delta = if i == j { ONE } else { ZERO };
            data.push(phase * (delta - w[i] * w[j].conj() * (2.0 / wnorm2)));
        }
    }
    ComplexMatrix::new(dim, data)
}
