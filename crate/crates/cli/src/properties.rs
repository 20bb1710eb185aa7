//! Seeded randomized checks over the whole pipeline, run by the `proptest`
//! subcommand. Each case draws a fresh system, operator and input state.

use biodilate::biortho::{BiorthogonalOperator, BiorthogonalSystem, KappaPolicy};
use biodilate::dilate::{biortho_plan, lcu_plan, pauli_decompose, sznagy_plan, DilationOutcome, DilationPlan};
use biodilate::numkernel::{fidelity, singular_values, ComplexMatrix, ComplexVector, C64};
use biodilate::qsim::{hadamard_layer, qft_circuit, register, StateVector};
use biodilate::random::{self, SeededRng};
use serde::Serialize;

use crate::io::SCHEMA;
use crate::report::{ToolInfo, TOOL};

pub const DEFAULT_DIMS: [usize; 4] = [2, 4, 8, 16];
pub const DEFAULT_CASES: usize = 50;
/// LCU on a dense 16-dimensional operator needs 8 ancillas and 256 selects; it
/// is only checked up to this dimension.
pub const LCU_MAX_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Hooks {
    /// Perturb one dual vector before building the system.
    pub corrupt_zeta: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub dim: usize,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub command: &'static str,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub cases: usize,
    pub checks: Vec<CheckSummary>,
    pub failed: usize,
    pub passed: bool,
}

type Check = fn(&mut SeededRng, usize, Hooks) -> Result<(), String>;

const CHECKS: [(&str, Check); 7] = [
    ("system-identities", system_identities),
    ("expansion-round-trip", expansion_round_trip),
    ("from-eigen-round-trip", from_eigen_round_trip),
    ("biortho-end-to-end", biortho_end_to_end),
    ("lcu-end-to-end", lcu_end_to_end),
    ("sznagy-end-to-end", sznagy_end_to_end),
    ("qft-zero-row", qft_zero_row),
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build_system(rng: &mut SeededRng, dim: usize, hooks: Hooks) -> Result<BiorthogonalSystem, String> {
    let kappa = random::kappas(rng, dim);
    let sys = random::system(rng, kappa);
    let mut zeta = sys.zeta().to_vec();
    if hooks.corrupt_zeta && dim > 1 {
        zeta[1] = zeta[1].add(&zeta[0].scale(C64::new(0.3, 0.0))).map_err(|e| e.to_string())?;
    }
    BiorthogonalSystem::from_explicit(sys.u().to_vec(), zeta).map_err(|e| e.to_string())
}

fn system_identities(rng: &mut SeededRng, dim: usize, hooks: Hooks) -> Result<(), String> {
    let sys = build_system(rng, dim, hooks)?;
    let id = ComplexMatrix::identity(dim);
    let d = sys.unity().max_abs_diff(&id).map_err(|e| e.to_string())?;
    ensure(d <= 1e-9, || format!("completeness residual {d:e}"))?;
    let ff = sys.metric().matmul(&sys.metric_inverse()).map_err(|e| e.to_string())?;
    let d = ff.max_abs_diff(&id).map_err(|e| e.to_string())?;
    ensure(d <= 1e-9, || format!("metric inverse residual {d:e}"))?;
    let report = sys.validate();
    ensure(report.passed, || format!("validation failed: {report:?}"))
}

fn expansion_round_trip(rng: &mut SeededRng, dim: usize, hooks: Hooks) -> Result<(), String> {
    let sys = build_system(rng, dim, hooks)?;
    let psi = random::state(rng, dim);
    let rebuilt = sys.expand(&psi).map_err(|e| e.to_string())?.reconstruct();
    let d = rebuilt.sub(&psi).map_err(|e| e.to_string())?.norm();
    ensure(d <= 1e-9, || format!("expansion residual {d:e}"))
}

fn from_eigen_round_trip(rng: &mut SeededRng, dim: usize, _: Hooks) -> Result<(), String> {
    let v = random::diagonalizable(rng, dim);
    let op = BiorthogonalOperator::from_eigen(&v, &KappaPolicy::default()).map_err(|e| e.to_string())?;
    let d = op.to_computational().max_abs_diff(&v).map_err(|e| e.to_string())?;
    ensure(d <= 1e-8 * v.frobenius_norm().max(1.0), || format!("round trip residual {d:e}"))
}

fn check_outcome(plan: &DilationPlan, psi: &ComplexVector, out: &DilationOutcome) -> Result<(), String> {
    let v_psi = plan.target.matvec(psi).map_err(|e| e.to_string())?;
    if out.simulated_probability > 1e-12 {
        let f = fidelity(&out.output_state, &v_psi).map_err(|e| e.to_string())?;
        ensure(f >= 1.0 - 1e-8, || format!("fidelity {f}"))?;
    }
    let dp = (out.simulated_probability - out.predicted_probability).abs();
    ensure(dp <= 1e-10, || format!("probability mismatch {dp:e}"))?;
    let rebuilt = out.branch.scale(C64::new(out.scale, 0.0));
    let d = rebuilt.max_abs_diff(&v_psi).map_err(|e| e.to_string())?;
    ensure(d <= 1e-9 * v_psi.norm().max(1.0), || format!("scale law residual {d:e}"))
}

fn biortho_end_to_end(rng: &mut SeededRng, dim: usize, _: Hooks) -> Result<(), String> {
    let v = random::diagonalizable(rng, dim);
    let psi = random::state(rng, dim);
    let op = BiorthogonalOperator::from_eigen(&v, &KappaPolicy::default()).map_err(|e| e.to_string())?;
    let plan = biortho_plan(&op).map_err(|e| e.to_string())?;
    ensure(plan.ancilla_qubits == plan.system_qubits, || "ancilla count".into())?;
    let out = plan.run(&psi).map_err(|e| e.to_string())?;
    check_outcome(&plan, &psi, &out)
}

fn lcu_end_to_end(rng: &mut SeededRng, dim: usize, _: Hooks) -> Result<(), String> {
    let v = random::diagonalizable(rng, dim);
    let psi = random::state(rng, dim);
    if dim > LCU_MAX_DIM {
        return Ok(());
    }
    let plan = lcu_plan(&pauli_decompose(&v).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let out = plan.run(&psi).map_err(|e| e.to_string())?;
    check_outcome(&plan, &psi, &out)
}

fn sznagy_end_to_end(rng: &mut SeededRng, dim: usize, _: Hooks) -> Result<(), String> {
    let g = random::diagonalizable(rng, dim);
    let psi = random::state(rng, dim);
    let sigma = singular_values(&g).map_err(|e| e.to_string())?[0];
    let v = g.scale(C64::new(0.95 / sigma, 0.0));
    let plan = sznagy_plan(&v).map_err(|e| e.to_string())?;
    let out = plan.run(&psi).map_err(|e| e.to_string())?;
    check_outcome(&plan, &psi, &out)
}

fn qft_zero_row(rng: &mut SeededRng, dim: usize, _: Hooks) -> Result<(), String> {
    let n = dim.trailing_zeros() as usize;
    let total = 2 * n;
    let s = StateVector::from_amplitudes(random::state(rng, 1 << total)).map_err(|e| e.to_string())?;
    let reg = register(0, n);
    let run = |c: biodilate::Result<biodilate::Circuit>| -> Result<_, String> {
        let c = c.map_err(|e| e.to_string())?;
        s.run(&c)
            .and_then(|out| out.postselect(&reg, 0))
            .map_err(|e| e.to_string())
    };
    let a = run(qft_circuit(total, &reg))?;
    let b = run(hadamard_layer(total, &reg))?;
    let dp = (a.probability - b.probability).abs();
    let ds = a
        .state
        .amplitudes()
        .max_abs_diff(b.state.amplitudes())
        .map_err(|e| e.to_string())?;
    ensure(dp <= 1e-10 && ds <= 1e-10, || format!("probability diff {dp:e}, state diff {ds:e}"))
}

/// Runs every check `cases` times per dimension. Deterministic in `seed`.
pub fn run_properties(seed: u64, dims: &[usize], cases: usize, hooks: Hooks) -> PropertyReport {
    let mut checks = Vec::new();
    for &dim in dims {
        for (k, (name, check)) in CHECKS.iter().enumerate() {
            let mut rng = random::seeded(seed ^ ((dim as u64) << 32) ^ ((k as u64) << 48));
            let mut summary = CheckSummary {
                name,
                dim,
                checked: 0,
                failed: 0,
                first_failure: None,
            };
            for case in 0..cases {
                summary.checked += 1;
                if let Err(msg) = check(&mut rng, dim, hooks) {
                    summary.failed += 1;
                    summary.first_failure.get_or_insert_with(|| format!("case {case}: {msg}"));
                }
            }
            checks.push(summary);
        }
    }
    let failed = checks.iter().map(|c| c.failed).sum();
    PropertyReport {
        schema: SCHEMA,
        tool: TOOL,
        command: "proptest",
        seed,
        dims: dims.to_vec(),
        cases,
        checks,
        failed,
        passed: failed == 0,
    }
}
