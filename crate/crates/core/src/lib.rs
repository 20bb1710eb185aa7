//! Biorthogonal dilation of non-unitary operators.
//!
//! A diagonalizable operator `V` is rewritten in the basis of its right
//! eigenvectors `|u_n>` and dual vectors `|zeta_n>`; when its matrix
//! representation there is unitary, `V|psi>` can be produced on a statevector
//! simulator with one extra register and a single post-selection. LCU and
//! Sz.-Nagy dilation are provided as baselines on the same inputs.

pub mod biortho;
pub mod dilate;
pub mod error;
pub mod numkernel;
pub mod qsim;
pub mod random;

pub use error::{Error, Result};
pub use biortho::{BiorthogonalOperator, BiorthogonalSystem, KappaPolicy};
pub use numkernel::{ComplexMatrix, ComplexVector, Tolerances, C64};
pub use qsim::{Circuit, Gate, GateLabel, StateVector};
