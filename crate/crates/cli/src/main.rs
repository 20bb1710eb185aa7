use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biodilate::dilate::Method;
use biodilate::numkernel::Tolerances;
use biodilate_cli::commands::{self, KappaChoice};
use biodilate_cli::io::{self, to_json};
use biodilate_cli::properties::{self, Hooks};
use biodilate_cli::report::{self, InputDigest};
use biodilate_cli::reproduce;
use biodilate_cli::{CliError, CliResult};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "biodilate", version, about = "Dilation of non-unitary operators by post-selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Biortho,
    Lcu,
    Sznagy,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Biortho => vec![Method::Biortho],
            MethodArg::Lcu => vec![Method::Lcu],
            MethodArg::Sznagy => vec![Method::SzNagy],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KappaArg {
    Modulus,
    Ones,
}

impl From<KappaArg> for KappaChoice {
    fn from(k: KappaArg) -> Self {
        match k {
            KappaArg::Modulus => KappaChoice::Modulus,
            KappaArg::Ones => KappaChoice::Ones,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigendata, biorthogonal system, metric and residuals for a matrix.
    Analyze {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "modulus")]
        kappa: KappaArg,
        /// Absolute tolerance; overrides BIODILATE_TOL.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs one or all dilation methods on a matrix and input state.
    Dilate {
        matrix: PathBuf,
        state: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "modulus")]
        kappa: KappaArg,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Writes the simulated circuits as a JSON gate list.
        #[arg(long)]
        export_circuit: Option<PathBuf>,
        /// Normalize the input state instead of rejecting it.
        #[arg(long)]
        renormalize: bool,
        /// Adds a wall-clock timestamp field to the report.
        #[arg(long)]
        timestamp: bool,
    },
    /// Simulates an exported circuit file on a state and post-selects.
    Simulate {
        circuit: PathBuf,
        state: PathBuf,
        #[arg(long)]
        renormalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the reproduction tables and a summary.
    #[command(visible_alias = "reproduce-paper")]
    Reproduce {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = reproduce::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Seeded randomized checks; exits with status 2 if any fail.
    Proptest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = properties::DEFAULT_DIMS)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = properties::DEFAULT_CASES)]
        cases: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_zeta: bool,
    },
}

fn tolerances(flag: Option<f64>) -> CliResult<Tolerances> {
    let env = std::env::var(report::TOL_ENV).ok();
    report::resolve_tolerances(flag, env.as_deref())
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { matrix, kappa, tol, out } => {
            let tol = tolerances(tol)?;
            let (text, digest) = io::read_text(&matrix)?;
            let v = io::parse_matrix_file(&text)?;
            let inputs = vec![InputDigest { role: "matrix", sha256: digest }];
            let report = commands::analyze(&v, inputs, kappa.into(), &tol)?;
            emit(&to_json(&report), out.as_deref())
        }
        Command::Dilate {
            matrix,
            state,
            method,
            kappa,
            tol,
            out,
            export_circuit,
            renormalize,
            timestamp,
        } => {
            let tol = tolerances(tol)?;
            let (mtext, mdigest) = io::read_text(&matrix)?;
            let (stext, sdigest) = io::read_text(&state)?;
            let v = io::parse_matrix_file(&mtext)?;
            let psi = io::parse_state_file(&stext, renormalize)?;
            let inputs = vec![
                InputDigest { role: "matrix", sha256: mdigest },
                InputDigest { role: "state", sha256: sdigest },
            ];
            let methods = method.methods();
            let stamp = timestamp.then(report::unix_timestamp);
            let report = commands::dilate(&v, &psi, inputs, &methods, kappa.into(), &tol, stamp)?;
            if let Some(path) = export_circuit {
                let bundle = commands::export_circuits(&v, &psi, &methods, kappa.into(), &tol);
                emit(&to_json(&bundle), Some(&path))?;
            }
            emit(&to_json(&report), out.as_deref())
        }
        Command::Simulate {
            circuit,
            state,
            renormalize,
            out,
        } => {
            let (ctext, cdigest) = io::read_text(&circuit)?;
            let (stext, sdigest) = io::read_text(&state)?;
            let circuits = io::parse_circuit_file(&ctext)?;
            let psi = io::parse_state_file(&stext, renormalize)?;
            let inputs = vec![
                InputDigest { role: "circuit", sha256: cdigest },
                InputDigest { role: "state", sha256: sdigest },
            ];
            emit(&to_json(&commands::simulate(&circuits, &psi, inputs)), out.as_deref())
        }
        Command::Reproduce { out, seed, tol } => {
            let tol = tolerances(tol)?;
            let files = reproduce::reproduce(seed, &tol)?;
            reproduce::write_outputs(&out, &files)?;
            for (name, _) in &files {
                println!("{}", out.join(name).display());
            }
            Ok(())
        }
        Command::Proptest {
            seed,
            dims,
            cases,
            out,
            corrupt_zeta,
        } => {
            if let Some(bad) = dims.iter().find(|d| !d.is_power_of_two() || **d < 2) {
                return Err(CliError::parse(format!("dimension {bad} is not a power of two >= 2")));
            }
            let report = properties::run_properties(seed, &dims, cases, Hooks { corrupt_zeta });
            for c in &report.checks {
                let status = if c.failed == 0 { "ok" } else { "FAIL" };
                eprintln!("{status:>4} {:<22} dim {:>2}: {}/{} passed", c.name, c.dim, c.checked - c.failed, c.checked);
                if let Some(msg) = &c.first_failure {
                    eprintln!("     {msg}");
                }
            }
            emit(&to_json(&report), out.as_deref())?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::PropertyFailure { failed: report.failed })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
