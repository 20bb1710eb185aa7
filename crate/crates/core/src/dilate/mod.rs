//! Three ways to realize a non-unitary `V|psi>` by post-selection: the
//! biorthogonal dilation, linear combination of unitaries, and Sz.-Nagy dilation.
//!
//! Each backend builds a [`DilationPlan`] once and runs it per input state. A run
//! reports the post-selected output, the simulated branch probability, the
//! probability predicted by that method's closed form, and the fidelity of the
//! output with a classical evaluation of `V|psi>`.

mod biortho_dilation;
mod compare;
mod lcu;
mod sznagy;

use serde::Serialize;

use crate::biortho::BiorthogonalOperator;
use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, ComplexVector};
use crate::qsim::{Circuit, StateVector};

pub use biortho_dilation::{biortho_plan, biortho_plan_with, biortho_run};
pub use compare::{compare, compare_with, Classification, ComparisonReport, MethodReport};
pub use lcu::{lcu_plan, lcu_run, pauli_decompose, UnitarySummand};
pub use sznagy::{sznagy_plan, sznagy_plan_with, sznagy_run};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Biortho,
    Lcu,
    SzNagy,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Biortho, Method::Lcu, Method::SzNagy];

    pub fn name(self) -> &'static str {
        match self {
            Method::Biortho => "biortho",
            Method::Lcu => "lcu",
            Method::SzNagy => "sznagy",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub enum PlanDetail {
    Biortho {
        operator: BiorthogonalOperator,
    },
    Lcu {
        summands: Vec<UnitarySummand>,
        /// Amplitudes `sqrt(w_i / s)` on the ancilla register, zero-padded.
        prep_amplitudes: ComplexVector,
    },
    SzNagy {
        sigma_max: f64,
        /// Eigenvalues of `1 - V^† V`, descending.
        defect_spectrum: Vec<f64>,
    },
}

#[derive(Debug, Clone)]
pub struct DilationPlan {
    pub method: Method,
    /// For the biorthogonal plan the first gate is a placeholder for the
    /// input-dependent preparation unitary.
    pub circuit: Circuit,
    pub system_qubits: usize,
    pub ancilla_qubits: usize,
    /// Qubits that receive the input state; all others start in `|0>`.
    pub input_register: Vec<usize>,
    pub postselect_register: Vec<usize>,
    pub postselect_value: usize,
    /// Input-independent part of the factor with `branch * scale = V|psi>`. The
    /// biorthogonal run multiplies this by the amplitude norm `c`.
    pub scale: f64,
    /// `V` in the computational basis.
    pub target: ComplexMatrix,
    pub detail: PlanDetail,
}

impl DilationPlan {
    pub fn run(&self, psi: &ComplexVector) -> Result<DilationOutcome> {
        match self.method {
            Method::Biortho => biortho_run(self, psi),
            Method::Lcu => lcu_run(self, psi),
            Method::SzNagy => sznagy_run(self, psi),
        }
    }

    pub(crate) fn expect_method(&self, method: Method) -> Result<()> {
        if self.method != method {
            return Err(Error::MethodMismatch {
                expected: self.method.name(),
                found: method.name(),
            });
        }
        Ok(())
    }

    /// Simulates `circuit` on the embedded input and post-selects.
    pub(crate) fn simulate(&self, circuit: &Circuit, psi: &ComplexVector) -> Result<(ComplexVector, ComplexVector, f64)> {
        let initial = StateVector::embed(psi, &self.input_register, circuit.num_qubits())?;
        let final_state = initial.run(circuit)?;
        let post = final_state.postselect(&self.postselect_register, self.postselect_value)?;
        let branch = post.unnormalized();
        Ok((post.state.amplitudes().clone(), branch, post.probability))
    }
}

#[derive(Debug, Clone)]
pub struct DilationOutcome {
    /// Renormalized post-selected state, proportional to `V|psi>`.
    pub output_state: ComplexVector,
    /// Post-selected branch before renormalization.
    pub branch: ComplexVector,
    pub simulated_probability: f64,
    pub predicted_probability: f64,
    pub fidelity_vs_oracle: f64,
    /// Factor with `branch * scale = V|psi>`.
    pub scale: f64,
    /// The circuit actually simulated, with any input-dependent gates filled in.
    pub circuit: Circuit,
}

pub(crate) fn qubits_for_dim(dim: usize) -> Result<usize> {
    crate::numkernel::log2_exact(dim).ok_or(Error::NotPowerOfTwoDim { dim })
}
