//! Command-line front end: harmonic decomposition, the 297-invariant basis,
//! covariant dumps, format conversion, orbit checking, rotation of test
//! fixtures, and Hilbert-basis enumeration.

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use elastinv_core::covariants::{s4s4_covariant_basis, s8_covariant_basis};
use elastinv_core::diophantine::DiophantineSystem;
use elastinv_core::harmonic::harmonic_decompose_elasticity;
use elastinv_core::invariants::{elasticity_forms, full_basis, orbit_equivalent};
use elastinv_core::io::{
    self, covariants_to_csv, covariants_to_json, decompose_to_csv, decompose_to_json,
    hilbert_to_csv, hilbert_to_json, invariants_to_csv, invariants_to_json, orbit_to_csv,
    orbit_to_json, tensor_to_csv, tensor_to_json, TensorRepr,
};
use elastinv_core::tensor::{rotate_elasticity, rotation_from_quaternion, ElasticityTensor};
use elastinv_core::{ExactScalar, FloatScalar, Scalar};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const CONVENTIONS: &str = "\
Frozen conventions:
  Voigt ordering     11, 22, 33, 23, 13, 12 (so slots 4=23, 5=13, 6=12); raw
                     components, no factor-of-2 weighting. CSV tensors are the
                     21 upper-triangle entries of the 6x6 matrix, row-major.
  Transvectants      (f,g)^r = sum_i (-1)^i C(r,i) d^r f/du^(r-i)dv^i *
                     d^r g/du^i dv^(r-i), with no normalization prefactor.
  Decomposition      d = dilatation tensor, v = Voigt tensor; lambda = tr d,
                     mu = tr v, a = (5 dev d - 4 dev v)/7,
                     b = (-2 dev d + 3 dev v)/7, D = totally symmetric
                     traceless part. Invariant ids are family:degree:index.
  Serialization      exact mode writes values as \"p/q\" strings and rejects
                     float literals; float mode writes JSON numbers.
  ELASTINV_THREADS   caps the worker threads used for table evaluation.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Gaussian-rational arithmetic; equality is bit-exact.
    Exact,
    /// f64 arithmetic; comparisons use the tolerance.
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Repr {
    Voigt,
    Components,
}

impl From<Repr> for TensorRepr {
    fn from(r: Repr) -> Self {
        match r {
            Repr::Voigt => TensorRepr::Voigt,
            Repr::Components => TensorRepr::Components,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "elastinv",
    version,
    about = "Rotation invariants of 3D elasticity tensors",
    after_help = CONVENTIONS,
    after_long_help = CONVENTIONS
)]
struct Cli {
    /// Arithmetic mode.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Split a tensor into its harmonic parts (lambda, mu, a, b, D).
    Decompose { input: PathBuf },
    /// Evaluate the complete 297-invariant basis.
    Invariants { input: PathBuf },
    /// Evaluate the 69 octic and 28 quartic-pair covariants of the tensor's
    /// binary forms.
    Covariants { input: PathBuf },
    /// Re-serialize a tensor (JSON voigt/components or CSV).
    Convert {
        input: PathBuf,
        /// JSON shape to emit (ignored for CSV output).
        #[arg(long, value_enum, default_value_t = Repr::Voigt)]
        repr: Repr,
    },
    /// Decide whether two tensors have identical invariant vectors.
    OrbitCheck {
        first: PathBuf,
        second: PathBuf,
        /// Relative tolerance on |v1-v2|/(1+|v1|+|v2|); forced to 0 in exact
        /// mode.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Rotate a tensor by a rational unit-direction quaternion, for test
    /// fixture generation.
    Rotate {
        input: PathBuf,
        /// Four comma-separated rational components, e.g. "1,2,-1,3".
        #[arg(long)]
        quaternion: String,
        #[arg(long, value_enum, default_value_t = Repr::Voigt)]
        repr: Repr,
    },
    /// Enumerate the irreducible solutions of the transvectant-exponent
    /// system for the given form orders.
    Hilbert {
        /// Orders of the first group of forms, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        orders_a: Vec<u64>,
        /// Orders of the second group of forms, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        orders_b: Vec<u64>,
        /// Search cap on the component sum; exceeding it is an error.
        #[arg(long, default_value_t = 40)]
        cap: u64,
    },
}

/// One resolved invocation: what to run, on which inputs, with which
/// arithmetic, tolerance, and output format.
#[derive(Debug)]
struct RunConfig {
    mode: Mode,
    format: Format,
    /// Comparison tolerance; forced to 0 in exact mode.
    tolerance: f64,
    inputs: Vec<PathBuf>,
    command: Command,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Self {
        let tolerance = match (&cli.command, cli.mode) {
            (_, Mode::Exact) => 0.0,
            (Command::OrbitCheck { tolerance, .. }, Mode::Float) => *tolerance,
            (_, Mode::Float) => 0.0,
        };
        let inputs = match &cli.command {
            Command::Decompose { input }
            | Command::Invariants { input }
            | Command::Covariants { input }
            | Command::Convert { input, .. }
            | Command::Rotate { input, .. } => vec![input.clone()],
            Command::OrbitCheck { first, second, .. } => vec![first.clone(), second.clone()],
            Command::Hilbert { .. } => Vec::new(),
        };
        RunConfig {
            mode: cli.mode,
            format: cli.format,
            tolerance,
            inputs,
            command: cli.command,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = emit(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let line = e.to_string();
            let line = line.lines().find(|l| !l.trim().is_empty()).unwrap_or("bad arguments");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    match run(RunConfig::from_cli(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cfg: RunConfig) -> Result<u8> {
    let threads = match std::env::var("ELASTINV_THREADS") {
        Ok(s) => Some(
            s.parse::<usize>()
                .map_err(|_| anyhow!("ELASTINV_THREADS: `{s}` is not a thread count"))?,
        ),
        Err(_) => None,
    };
    elastinv_core::configure_threads(threads);
    match cfg.mode {
        Mode::Exact => dispatch::<ExactScalar>(&cfg),
        Mode::Float => dispatch::<FloatScalar>(&cfg),
    }
}

fn read_tensor<S: Scalar>(path: &Path) -> Result<ElasticityTensor<S>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read `{}`", path.display()))?;
    io::tensor_from_str(&text).with_context(|| format!("`{}`", path.display()))
}

/// Writes to stdout, exiting quietly when the reading end has closed (e.g.
/// the output is piped into `head`).
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(e).context("cannot write to stdout"),
    }
}

fn emit_json(v: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    emit(&text)
}

fn dispatch<S: Scalar>(cfg: &RunConfig) -> Result<u8> {
    match &cfg.command {
        Command::Decompose { .. } => {
            let parts = harmonic_decompose_elasticity(&read_tensor::<S>(&cfg.inputs[0])?);
            match cfg.format {
                Format::Json => emit_json(&decompose_to_json(&parts))?,
                Format::Csv => emit(&decompose_to_csv(&parts))?,
            }
            Ok(0)
        }
        Command::Invariants { .. } => {
            let basis = full_basis(&read_tensor::<S>(&cfg.inputs[0])?)?;
            match cfg.format {
                Format::Json => emit_json(&invariants_to_json(&basis))?,
                Format::Csv => emit(&invariants_to_csv(&basis))?,
            }
            Ok(0)
        }
        Command::Covariants { .. } => {
            let forms = elasticity_forms(&read_tensor::<S>(&cfg.inputs[0])?)?;
            let octic = s8_covariant_basis(&forms.f)?;
            let pair = s4s4_covariant_basis(&forms.h, &forms.k)?;
            match cfg.format {
                Format::Json => emit_json(&covariants_to_json(&[&octic, &pair]))?,
                Format::Csv => emit(&covariants_to_csv(&[&octic, &pair]))?,
            }
            Ok(0)
        }
        Command::Convert { repr, .. } => {
            let c = read_tensor::<S>(&cfg.inputs[0])?;
            match cfg.format {
                Format::Json => emit_json(&tensor_to_json(&c, (*repr).into()))?,
                Format::Csv => emit(&tensor_to_csv(&c))?,
            }
            Ok(0)
        }
        Command::OrbitCheck { .. } => {
            let c1 = read_tensor::<S>(&cfg.inputs[0])?;
            let c2 = read_tensor::<S>(&cfg.inputs[1])?;
            let report = orbit_equivalent(&c1, &c2, cfg.tolerance)?;
            match cfg.format {
                Format::Json => emit_json(&orbit_to_json(&report))?,
                Format::Csv => emit(&orbit_to_csv(&report))?,
            }
            Ok(if report.equivalent { 0 } else { 1 })
        }
        Command::Rotate {
            quaternion, repr, ..
        } => {
            let c = read_tensor::<S>(&cfg.inputs[0])?;
            let q = io::parse_quaternion_list(quaternion)?;
            let g = rotation_from_quaternion::<S>(&q);
            let rotated = rotate_elasticity(&g, &c);
            match cfg.format {
                Format::Json => emit_json(&tensor_to_json(&rotated, (*repr).into()))?,
                Format::Csv => emit(&tensor_to_csv(&rotated))?,
            }
            Ok(0)
        }
        Command::Hilbert {
            orders_a,
            orders_b,
            cap,
        } => {
            let system = DiophantineSystem::gordan(orders_a, orders_b);
            let solutions = system.irreducible_solutions(*cap)?;
            match cfg.format {
                Format::Json => emit_json(&hilbert_to_json(orders_a, orders_b, *cap, &solutions))?,
                Format::Csv => emit(&hilbert_to_csv(&solutions))?,
            }
            Ok(0)
        }
    }
}
