use biodilate::dilate::{Classification, MethodReport};
use biodilate::numkernel::{ComplexMatrix, ComplexVector, Tolerances};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::Pair;

pub const TOL_ENV: &str = "BIODILATE_TOL";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: ToolInfo = ToolInfo {
    name: "biodilate",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub role: &'static str,
    pub sha256: String,
}

/// Output of `dilate`. Serializes in declaration order; `timestamp` is only
/// present when explicitly requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub kappa_policy: &'static str,
    pub dim: usize,
    pub classification: Classification,
    pub methods: Vec<MethodReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

/// Flag beats environment beats default, for the absolute tolerance.
pub fn resolve_tolerances(flag: Option<f64>, env: Option<&str>) -> CliResult<Tolerances> {
    let mut tol = Tolerances::default();
    let chosen = match (flag, env) {
        (Some(v), _) => Some(v),
        (None, Some(text)) => Some(
            text.trim()
                .parse::<f64>()
                .map_err(|_| CliError::parse(format!("{TOL_ENV}={text:?} is not a number")))?,
        ),
        (None, None) => None,
    };
    if let Some(v) = chosen {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::parse(format!("tolerance {v} must be positive")));
        }
        tol.abs = v;
    }
    Ok(tol)
}

/// Seconds since the Unix epoch, for the optional report timestamp.
pub fn unix_timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Pair>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

pub fn vector_json(v: &ComplexVector) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}
