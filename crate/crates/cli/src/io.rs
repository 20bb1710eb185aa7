//! JSON file formats. Complex numbers are `[re, im]` pairs throughout.

use biodilate::numkernel::{ComplexMatrix, ComplexVector, C64};
use biodilate::qsim::{Circuit, Gate, GateLabel};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "biodilate/v1";
pub const STATE_NORM_TOL: f64 = 1e-8;
/// Gates read back from a circuit file are checked for unitarity at this level.
pub const IMPORT_UNITARY_TOL: f64 = 1e-8;

pub type Pair = [f64; 2];

fn pairs(values: &[C64]) -> Vec<Pair> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

fn complexes(values: &[Pair]) -> Vec<C64> {
    values.iter().map(|p| C64::new(p[0], p[1])).collect()
}

fn check_schema(schema: &Option<String>) -> CliResult<()> {
    match schema.as_deref() {
        None | Some(SCHEMA) => Ok(()),
        Some(other) => Err(CliError::parse(format!("unsupported schema {other:?}, expected {SCHEMA:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub dim: usize,
    /// Row-major, `dim * dim` entries.
    pub entries: Vec<Pair>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            schema: Some(SCHEMA.into()),
            dim: m.dim(),
            entries: pairs(m.as_slice()),
        }
    }

    pub fn to_matrix(&self) -> CliResult<ComplexMatrix> {
        check_schema(&self.schema)?;
        if self.dim == 0 {
            return Err(CliError::parse("matrix dimension must be positive"));
        }
        let expected = self
            .dim
            .checked_mul(self.dim)
            .ok_or_else(|| CliError::parse("matrix dimension overflows"))?;
        if self.entries.len() != expected {
            return Err(CliError::parse(format!(
                "matrix of dim {} needs {expected} entries, found {}",
                self.dim,
                self.entries.len()
            )));
        }
        Ok(ComplexMatrix::new(self.dim, complexes(&self.entries))?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub amplitudes: Vec<Pair>,
}

impl StateFile {
    pub fn from_vector(v: &ComplexVector) -> Self {
        Self {
            schema: Some(SCHEMA.into()),
            amplitudes: pairs(v.as_slice()),
        }
    }

    /// Length must be a power of two and the norm within `STATE_NORM_TOL` of one,
    /// unless `renormalize` is set.
    pub fn to_vector(&self, renormalize: bool) -> CliResult<ComplexVector> {
        check_schema(&self.schema)?;
        let n = self.amplitudes.len();
        if !n.is_power_of_two() {
            return Err(CliError::parse(format!("state length {n} is not a power of two")));
        }
        let v = ComplexVector::new(complexes(&self.amplitudes))?;
        let norm = v.norm();
        if renormalize {
            return Ok(v.normalized()?);
        }
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(CliError::parse(format!(
                "state norm {norm} differs from 1 by more than {STATE_NORM_TOL}"
            )));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateRecord {
    pub label: GateLabel,
    pub targets: Vec<usize>,
    /// `(qubit, required bit)`.
    pub controls: Vec<(usize, bool)>,
    pub matrix: MatrixFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostSelection {
    pub register: Vec<usize>,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub method: String,
    pub num_qubits: usize,
    pub input_register: Vec<usize>,
    pub postselect: PostSelection,
    /// `branch * scale` reproduces `V|psi>` for the input the circuit was built for.
    pub scale: f64,
    pub gates: Vec<GateRecord>,
}

impl CircuitFile {
    pub fn to_circuit(&self) -> CliResult<Circuit> {
        check_schema(&self.schema)?;
        let mut circuit = Circuit::new(self.num_qubits)?;
        for g in &self.gates {
            let matrix = g.matrix.to_matrix()?;
            circuit.push(Gate::with_tolerance(
                matrix,
                g.targets.clone(),
                g.controls.clone(),
                g.label,
                IMPORT_UNITARY_TOL,
            )?)?;
        }
        Ok(circuit)
    }
}

/// One circuit per method, as written by `dilate --export-circuit`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitBundle {
    pub schema: String,
    pub circuits: Vec<CircuitFile>,
}

pub fn gate_records(circuit: &Circuit) -> Vec<GateRecord> {
    circuit
        .gates()
        .iter()
        .map(|g| GateRecord {
            label: g.label(),
            targets: g.targets().to_vec(),
            controls: g.controls().to_vec(),
            matrix: MatrixFile::from_matrix(g.matrix()),
        })
        .collect()
}

pub fn parse_matrix_file(text: &str) -> CliResult<ComplexMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(CliError::json)?;
    file.to_matrix()
}

pub fn parse_state_file(text: &str, renormalize: bool) -> CliResult<ComplexVector> {
    let file: StateFile = serde_json::from_str(text).map_err(CliError::json)?;
    file.to_vector(renormalize)
}

/// Reads a circuit bundle and rebuilds every circuit in it.
pub fn parse_circuit_file(text: &str) -> CliResult<Vec<(CircuitFile, Circuit)>> {
    let bundle: CircuitBundle = serde_json::from_str(text).map_err(CliError::json)?;
    check_schema(&Some(bundle.schema.clone()))?;
    bundle
        .circuits
        .into_iter()
        .map(|c| {
            let circuit = c.to_circuit()?;
            Ok((c, circuit))
        })
        .collect()
}

pub fn read_text(path: &std::path::Path) -> CliResult<(String, String)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let digest = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| CliError::parse(format!("{} is not UTF-8", path.display())))?;
    Ok((text, digest))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Pretty JSON with a trailing newline; field order follows struct order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
