//! Command-line front end: JSON matrices in, machine-readable spectral
//! reports out.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when a
//! verification report contains at least one FAIL line.

use clap::{Args, Parser, Subcommand};
use qspectral::json::{self, JVal};
use qspectral::verify::{run_invariant_suite, VerifyInput};
use qspectral::{
    ajb_decompose, canonicalize, compact, point_spectrum, spectral_decomposition, synthesize,
    Error, HilbertBasis, ImaginaryUnit, Quaternion, DEFAULT_TOL,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qspectral",
    version,
    about = "Spectral analysis of quaternionic right-linear operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Input file (JSON; format depends on the command)
    #[arg(long)]
    input: Option<PathBuf>,

    /// Output file; stdout when absent
    #[arg(long)]
    output: Option<PathBuf>,

    /// Slice imaginary unit, four comma-separated components w,x,y,z
    #[arg(long, default_value = "0,1,0,0")]
    slice: String,

    /// Absolute tolerance (default 1e-9; env QSPECTRAL_TOL overrides)
    #[arg(long)]
    tol: Option<f64>,

    /// Seed for randomized commands
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Point spectrum and spherical spectral radius of a matrix
    Spectrum(CommonOpts),
    /// Normal / self-adjoint / anti self-adjoint / unitary / positive flags
    Classify(CommonOpts),
    /// A+JB splitting, spectral decomposition and canonical form
    Decompose(CommonOpts),
    /// Assemble the matrix Σ z λ_z ⟨z|·⟩ from a basis-and-eigenvalues file
    Synth(CommonOpts),
    /// Run the invariant suite on the input matrix or a random corpus
    Verify {
        #[command(flatten)]
        common: CommonOpts,

        /// Dimension of random normal test matrices (omit to verify --input)
        #[arg(long)]
        random: Option<usize>,

        /// Number of random matrices
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
    /// Truncation sweep of a compact model with the spectral laws checked
    Simulate {
        #[command(flatten)]
        common: CommonOpts,

        /// Truncation levels, comma separated and strictly increasing
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
    },
}

fn parse_slice(text: &str) -> Result<ImaginaryUnit, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "slice needs four comma-separated components, got '{text}'"
        )));
    }
    let mut comps = [0.0; 4];
    for (dst, part) in comps.iter_mut().zip(&parts) {
        *dst = part
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("slice component '{part}': {e}")))?;
    }
    ImaginaryUnit::new(Quaternion::from_array(comps), 1e-9)
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, Error> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("QSPECTRAL_TOL") {
            Ok(text) => text
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("QSPECTRAL_TOL: {e}")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(tol)
}

fn read_input(common: &CommonOpts) -> Result<String, Error> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| Error::Parse("--input is required for this command".into()))?;
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn emit(common: &CommonOpts, value: &JVal) -> Result<(), Error> {
    let rendered = value.render();
    match &common.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Spectrum(common) => {
            let iota = parse_slice(&common.slice)?;
            let tol = resolve_tol(common.tol)?;
            let t = json::parse_matrix(&read_input(&common)?)?;
            let spectrum = point_spectrum(&t, &iota, tol)?;
            let radius = spectrum.points.max_modulus();
            emit(&common, &json::spectrum_to_json(&spectrum, radius))?;
            Ok(0)
        }
        Command::Classify(common) => {
            let tol = resolve_tol(common.tol)?;
            let t = json::parse_matrix(&read_input(&common)?)?;
            let class = t.classify(tol)?;
            emit(&common, &json::class_to_json(&class))?;
            Ok(0)
        }
        Command::Decompose(common) => {
            let iota = parse_slice(&common.slice)?;
            let t = json::parse_matrix(&read_input(&common)?)?;
            let ajb = ajb_decompose(&t, &iota)?;
            let dec = spectral_decomposition(&t, &iota)?;
            let canonical = canonicalize(&dec, &iota);
            emit(
                &common,
                &json::decomposition_to_json(&dec, &ajb, &canonical),
            )?;
            Ok(0)
        }
        Command::Synth(common) => {
            let tol = resolve_tol(common.tol)?;
            let (vectors, lambdas) = json::parse_synthesis_input(&read_input(&common)?)?;
            let n = vectors.len();
            let basis = HilbertBasis::new(vectors, tol * n as f64)?;
            let t = synthesize(&basis, &lambdas, tol * n as f64)?;
            emit(&common, &json::matrix_to_json(&t))?;
            Ok(0)
        }
        Command::Verify {
            common,
            random,
            count,
        } => {
            let iota = parse_slice(&common.slice)?;
            let report = match random {
                Some(dim) => {
                    if dim == 0 || count == 0 {
                        return Err(Error::InvalidParameter(
                            "--random and --count must be positive".into(),
                        ));
                    }
                    run_invariant_suite(&VerifyInput::Random { dim, count }, &iota, common.seed)?
                }
                None => {
                    let t = json::parse_matrix(&read_input(&common)?)?;
                    run_invariant_suite(&VerifyInput::Matrix(&t), &iota, common.seed)?
                }
            };
            let pass = report.pass();
            emit(&common, &report.to_json())?;
            Ok(if pass { 0 } else { 2 })
        }
        Command::Simulate { common, levels } => {
            let model = json::parse_model(&read_input(&common)?)?;
            let report = compact::verify_compact_laws(&model, &levels)?;
            let value = JVal::Obj(vec![
                ("pass", JVal::Bool(report.pass)),
                ("norm_law_pass", JVal::Bool(report.norm_law_pass)),
                ("norm_law_residual", JVal::Num(report.norm_law_residual)),
                (
                    "min_modulus_monotone",
                    JVal::Bool(report.min_modulus_monotone),
                ),
                (
                    "multiplicity_stable",
                    JVal::Bool(report.multiplicity_stable),
                ),
                ("levels", json::truncation_reports_to_json(&report.reports)),
            ]);
            let pass = report.pass;
            emit(&common, &value)?;
            Ok(if pass { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; keep exit code 1 for usage
            // errors, 0 for --help/--version
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
