//! Seeded reproduction tables for the worked examples:
//!
//! - (a) closed-form success probability of the one-qubit example over a grid of inputs,
//! - (b) the `tau` family `[[tau, -1 - tau], [0, -1]]`,
//! - (c) LCU against the biorthogonal dilation on the one-qubit example,
//! - (d) ancilla and gate counts for `N = 1..4` random instances.
//!
//! [`reproduce`] is pure: the same seed always yields byte-identical files.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use biodilate::biortho::{BiorthogonalOperator, KappaPolicy};
use biodilate::dilate::{biortho_plan, compare_with, lcu_plan, pauli_decompose, Method};
use biodilate::numkernel::{fidelity, singular_values, ComplexMatrix, ComplexVector, Tolerances, C64};
use biodilate::qsim::gate_census;
use biodilate::random;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::{sha256_hex, to_json, Pair, SCHEMA};
use crate::report::{vector_json, ToolInfo, TOOL};

pub const DEFAULT_SEED: u64 = 42;
pub const RANDOM_GRID_POINTS: usize = 24;
/// Constant in the `C N^2 2^N` bound on the elementary-gate estimate.
pub const SCALING_CONSTANT: usize = 4;
pub const TAUS: [f64; 3] = [0.5, 1.0, 2.0];

pub fn tau_operator(tau: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[tau, -1.0 - tau, 0.0, -1.0]).expect("finite")
}

/// `(|a0 - 2 a1|^2 + |a1|^2) / (2 (|a0 - a1|^2 + 2 |a1|^2))`.
pub fn closed_form_probability(a0: C64, a1: C64) -> f64 {
    ((a0 - 2.0 * a1).norm_sqr() + a1.norm_sqr()) / (2.0 * ((a0 - a1).norm_sqr() + 2.0 * a1.norm_sqr()))
}

fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormRow {
    pub a0: Pair,
    pub a1: Pair,
    pub analytic_p: f64,
    pub simulated_p: f64,
    pub abs_diff: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauRow {
    pub tau: f64,
    pub eigenvalues: Vec<Pair>,
    pub kappa: Vec<f64>,
    pub rep_unitary: bool,
    pub bi_unitary_representation: bool,
    pub pseudo_unitarity_residual: f64,
    pub sigma_max: f64,
    pub max_eigenvalue_vdag_v: f64,
    pub spectral_contraction: bool,
    pub contraction: bool,
    pub input: Vec<Pair>,
    pub biortho_p: Option<f64>,
    pub biortho_fidelity: Option<f64>,
    pub lcu_applicable: bool,
    pub sznagy_applicable: bool,
    pub sznagy_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LcuRow {
    pub input: Vec<Pair>,
    pub v_psi_norm_sqr: f64,
    pub biortho_ancillas: usize,
    pub biortho_p: f64,
    pub lcu_summands: usize,
    pub lcu_ancillas: usize,
    pub lcu_simulated_p: f64,
    /// `|V psi|^2 / s^2`.
    pub lcu_exact_p: f64,
    /// `|V psi|^2 / s`, the amplitude-level estimate.
    pub lcu_amplitude_estimate: f64,
    pub estimate_over_simulated: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub dim: usize,
    pub biortho_ancillas: usize,
    pub controlled_basis_gates: usize,
    pub qft_rotations: usize,
    pub qft_swaps: usize,
    pub elementary_estimate: usize,
    pub bound: usize,
    pub within_bound: bool,
    pub biortho_p: f64,
    pub biortho_fidelity: f64,
    pub lcu_summands: usize,
    pub lcu_ancillas: usize,
    pub lcu_p: f64,
    pub lcu_fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table<R> {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub table: &'static str,
    pub seed: u64,
    pub notes: Vec<String>,
    pub rows: Vec<R>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub files: Vec<ManifestEntry>,
}

fn table<R>(name: &'static str, seed: u64, notes: Vec<String>, rows: Vec<R>) -> Table<R> {
    Table {
        schema: SCHEMA,
        tool: TOOL,
        table: name,
        seed,
        notes,
        rows,
    }
}

fn example_plan() -> CliResult<biodilate::dilate::DilationPlan> {
    let op = BiorthogonalOperator::from_eigen(&tau_operator(1.0), &KappaPolicy::AllOnes)?;
    Ok(biortho_plan(&op)?)
}

pub fn closed_form_table(seed: u64) -> CliResult<Vec<ClosedFormRow>> {
    let mut rng = random::seeded(seed);
    let h = FRAC_1_SQRT_2;
    let mut inputs = vec![
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        [C64::new(h, 0.0), C64::new(h, 0.0)],
        [C64::new(h, 0.0), C64::new(-h, 0.0)],
        [C64::new(h, 0.0), C64::new(0.0, h)],
    ];
    for _ in 0..RANDOM_GRID_POINTS {
        let s = random::state(&mut rng, 2);
        inputs.push([s[0], s[1]]);
    }
    let plan = example_plan()?;
    inputs
        .into_iter()
        .map(|[a0, a1]| {
            let psi = ComplexVector::new(vec![a0, a1])?;
            let out = plan.run(&psi)?;
            let analytic_p = closed_form_probability(a0, a1);
            let expected = ComplexVector::new(vec![a0 - 2.0 * a1, -a1])?;
            Ok(ClosedFormRow {
                a0: pair(a0),
                a1: pair(a1),
                analytic_p,
                simulated_p: out.simulated_probability,
                abs_diff: (analytic_p - out.simulated_probability).abs(),
                fidelity: fidelity(&out.output_state, &expected)?,
            })
        })
        .collect()
}

pub fn tau_table(seed: u64, tol: &Tolerances) -> CliResult<Vec<TauRow>> {
    let mut rng = random::seeded(seed.wrapping_add(1));
    let mut rows = Vec::new();
    for tau in TAUS {
        let v = tau_operator(tau);
        let psi = random::state(&mut rng, 2);
        let op = BiorthogonalOperator::from_eigen_with(&v, &KappaPolicy::ModulusOfEigenvalue, tol)?;
        let report = compare_with(&v, &psi, &KappaPolicy::ModulusOfEigenvalue, &Method::ALL, tol)?;
        let sigma_max = singular_values(&v)?[0];
        let b = report.method(Method::Biortho).expect("requested");
        let l = report.method(Method::Lcu).expect("requested");
        let s = report.method(Method::SzNagy).expect("requested");
        let c = &report.classification;
        rows.push(TauRow {
            tau,
            eigenvalues: c.eigenvalues.clone().unwrap_or_default(),
            kappa: op.system().kappa().to_vec(),
            rep_unitary: op.rep().is_unitary(tol.abs),
            bi_unitary_representation: op.is_bi_unitary(tol),
            pseudo_unitarity_residual: op.pseudo_unitarity_residual(),
            sigma_max,
            max_eigenvalue_vdag_v: sigma_max * sigma_max,
            spectral_contraction: c.spectral_contraction.unwrap_or(false),
            contraction: c.contraction,
            input: vector_json(&psi),
            biortho_p: b.simulated_probability,
            biortho_fidelity: b.fidelity,
            lcu_applicable: l.applicable,
            sznagy_applicable: s.applicable,
            sznagy_error: s.error.clone(),
        });
    }
    Ok(rows)
}

pub fn lcu_table(seed: u64) -> CliResult<Vec<LcuRow>> {
    let mut rng = random::seeded(seed.wrapping_add(2));
    let v = tau_operator(1.0);
    let h = FRAC_1_SQRT_2;
    let mut inputs = vec![
        ComplexVector::basis(2, 0),
        ComplexVector::basis(2, 1),
        ComplexVector::from_real(&[h, h])?,
    ];
    for _ in 0..5 {
        inputs.push(random::state(&mut rng, 2));
    }
    let biortho = example_plan()?;
    let terms = pauli_decompose(&v)?;
    let lcu = lcu_plan(&terms)?;
    let s = lcu.scale;
    inputs
        .iter()
        .map(|psi| {
            let v_psi = v.matvec(psi)?.norm_sqr();
            let b = biortho.run(psi)?;
            let l = lcu.run(psi)?;
            let estimate = v_psi / s;
            Ok(LcuRow {
                input: vector_json(psi),
                v_psi_norm_sqr: v_psi,
                biortho_ancillas: biortho.ancilla_qubits,
                biortho_p: b.simulated_probability,
                lcu_summands: terms.len(),
                lcu_ancillas: lcu.ancilla_qubits,
                lcu_simulated_p: l.simulated_probability,
                lcu_exact_p: v_psi / (s * s),
                lcu_amplitude_estimate: estimate,
                estimate_over_simulated: estimate / l.simulated_probability,
            })
        })
        .collect()
}

pub fn scaling_table(seed: u64) -> CliResult<Vec<ScalingRow>> {
    let mut rng = random::seeded(seed.wrapping_add(3));
    let mut rows = Vec::new();
    for n in 1..=4usize {
        let dim = 1 << n;
        let v = random::diagonalizable(&mut rng, dim);
        let psi = random::state(&mut rng, dim);
        let plan = biortho_plan(&BiorthogonalOperator::from_eigen(&v, &KappaPolicy::ModulusOfEigenvalue)?)?;
        let census = gate_census(&plan.circuit);
        let out = plan.run(&psi)?;
        let lcu = lcu_plan(&pauli_decompose(&v)?)?;
        let lout = lcu.run(&psi)?;
        let bound = SCALING_CONSTANT * n * n * dim;
        let summands = match &lcu.detail {
            biodilate::dilate::PlanDetail::Lcu { summands, .. } => summands.len(),
            _ => unreachable!("lcu plan"),
        };
        rows.push(ScalingRow {
            n,
            dim,
            biortho_ancillas: plan.ancilla_qubits,
            controlled_basis_gates: census.controlled_basis,
            qft_rotations: census.qft - census.qft_swaps,
            qft_swaps: census.qft_swaps,
            elementary_estimate: census.elementary_estimate,
            bound,
            within_bound: census.within_scaling_bound(n, SCALING_CONSTANT),
            biortho_p: out.simulated_probability,
            biortho_fidelity: out.fidelity_vs_oracle,
            lcu_summands: summands,
            lcu_ancillas: lcu.ancilla_qubits,
            lcu_p: lout.simulated_probability,
            lcu_fidelity: lout.fidelity_vs_oracle,
        });
    }
    Ok(rows)
}

fn e(x: f64) -> String {
    format!("{x:.6e}")
}

fn z(p: &Pair) -> String {
    format!("{:+.4}{:+.4}i", p[0], p[1])
}

fn zs(v: &[Pair]) -> String {
    v.iter().map(z).collect::<Vec<_>>().join(", ")
}

fn opt(x: Option<f64>) -> String {
    x.map(e).unwrap_or_else(|| "-".into())
}

fn summary(
    seed: u64,
    a: &[ClosedFormRow],
    b: &[TauRow],
    c: &[LcuRow],
    d: &[ScalingRow],
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# biodilate reproduction tables\n");
    let _ = writeln!(s, "tool {} {}, seed {seed}\n", TOOL.name, TOOL.version);

    let worst = a.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    let _ = writeln!(s, "## (a) closed-form success probability, V = [[1, -2], [0, -1]]\n");
    let _ = writeln!(s, "{} inputs, max |analytic - simulated| = {}\n", a.len(), e(worst));
    let _ = writeln!(s, "| a0 | a1 | analytic p | simulated p | fidelity |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for r in a {
        let _ = writeln!(
            s,
            "| {} | {} | {:.12} | {:.12} | {:.12} |",
            z(&r.a0),
            z(&r.a1),
            r.analytic_p,
            r.simulated_p,
            r.fidelity
        );
    }

    let _ = writeln!(s, "\n## (b) tau family [[tau, -1 - tau], [0, -1]]\n");
    let _ = writeln!(
        s,
        "| tau | eigenvalues | kappa | bi-unitary | sigma_max | spectral contraction | contraction | biortho fidelity | LCU | Sz.-Nagy |"
    );
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|");
    for r in b {
        let _ = writeln!(
            s,
            "| {} | {} | {:?} | {} | {:.10} | {} | {} | {} | {} | {} |",
            r.tau,
            zs(&r.eigenvalues),
            r.kappa,
            r.bi_unitary_representation,
            r.sigma_max,
            r.spectral_contraction,
            r.contraction,
            r.biortho_fidelity.map(|f| format!("{f:.12}")).unwrap_or_else(|| "-".into()),
            if r.lcu_applicable { "applicable" } else { "n/a" },
            if r.sznagy_applicable { "applicable" } else { "not a contraction" },
        );
    }

    let _ = writeln!(s, "\n## (c) LCU against the biorthogonal dilation\n");
    let _ = writeln!(s, "{}\n", LCU_NOTE);
    let _ = writeln!(
        s,
        "| input | biortho ancillas | biortho p | LCU ancillas | LCU simulated p | |V psi|^2/9 | |V psi|^2/3 |"
    );
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for r in c {
        let _ = writeln!(
            s,
            "| {} | {} | {:.12} | {} | {:.12} | {:.12} | {:.12} |",
            zs(&r.input),
            r.biortho_ancillas,
            r.biortho_p,
            r.lcu_ancillas,
            r.lcu_simulated_p,
            r.lcu_exact_p,
            r.lcu_amplitude_estimate
        );
    }

    let _ = writeln!(s, "\n## (d) ancillas and gate counts\n");
    let _ = writeln!(
        s,
        "| N | biortho ancillas | controlled preps | QFT rotations | QFT swaps | estimate | {SCALING_CONSTANT} N^2 2^N | LCU summands | LCU ancillas | biortho p | LCU p |"
    );
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|---|");
    for r in d {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.n,
            r.biortho_ancillas,
            r.controlled_basis_gates,
            r.qft_rotations,
            r.qft_swaps,
            r.elementary_estimate,
            r.bound,
            r.lcu_summands,
            r.lcu_ancillas,
            e(r.biortho_p),
            opt(Some(r.lcu_p)),
        );
    }
    s
}

pub const LCU_NOTE: &str = "Exact simulation of PREP, SELECT, PREP^dagger with amplitudes sqrt(w_i/s) \
leaves (1/s) V|psi> in the ancilla-zero branch, so the success probability is |V psi|^2/s^2 = |V psi|^2/9 \
for three unit-weight terms. The amplitude-level estimate |V psi|^2/s = |V psi|^2/3 is higher by a factor of 3 \
and is not what the circuit produces.";

/// File name and contents for every output, in write order.
pub fn reproduce(seed: u64, tol: &Tolerances) -> CliResult<Vec<(String, String)>> {
    let a = closed_form_table(seed)?;
    let b = tau_table(seed, tol)?;
    let c = lcu_table(seed)?;
    let d = scaling_table(seed)?;
    let sigma_note = "sigma_max > 1 for every tau: the defect operator sqrt(1 - V^dagger V) does not exist, \
even for tau = 0.5 where both eigenvalues lie on or inside the unit circle."
        .to_string();
    let mut files = vec![
        ("a_closed_form.json".to_string(), to_json(&table("closed-form", seed, vec![], a.clone()))),
        ("b_tau_sweep.json".to_string(), to_json(&table("tau-sweep", seed, vec![sigma_note], b.clone()))),
        (
            "c_lcu_vs_biortho.json".to_string(),
            to_json(&table("lcu-vs-biortho", seed, vec![LCU_NOTE.to_string()], c.clone())),
        ),
        ("d_scaling.json".to_string(), to_json(&table("scaling", seed, vec![], d.clone()))),
        ("summary.md".to_string(), summary(seed, &a, &b, &c, &d)),
    ];
    let manifest = Manifest {
        schema: SCHEMA,
        tool: TOOL,
        seed,
        tolerances: *tol,
        files: files
            .iter()
            .map(|(name, body)| ManifestEntry {
                file: name.clone(),
                sha256: sha256_hex(body.as_bytes()),
            })
            .collect(),
    };
    files.push(("manifest.json".to_string(), to_json(&manifest)));
    Ok(files)
}

pub fn write_outputs(dir: &std::path::Path, files: &[(String, String)]) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(())
}
