//! The `numrange` command-line tool. `run` is the whole program minus the
//! process exit, so integration tests can drive it in-process.

pub mod document;
pub mod plot;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use numrange_core::{battery, random, Error as CoreError, Tensor64};

use crate::document::DocumentError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Document { path: PathBuf, source: DocumentError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{stage} failed: {source}")]
    Numeric { stage: &'static str, source: CoreError },
    #[error("{stage} failed: {detail}")]
    Check { stage: &'static str, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Document { .. } | CliError::Io { .. } => EXIT_USAGE,
            CliError::Numeric { .. } | CliError::Check { .. } => EXIT_NUMERIC,
        }
    }
}

fn at(stage: &'static str) -> impl FnOnce(CoreError) -> CliError {
    move |source| CliError::Numeric { stage, source }
}

#[derive(Debug, Parser)]
#[command(name = "numrange", version, about = "Numerical ranges, spectra and pseudoinverses of even-order tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trace the boundary of the numerical range.
    Boundary {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = numrange_core::DEFAULT_N_THETA)]
        n: usize,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Check every eigenvalue against the sampled range.
        #[arg(long)]
        eigs: bool,
        /// Slack for the convexity certificate and eigenvalue membership.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Print the numerical radius with six decimals.
    Radius {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2000)]
        n: usize,
    },
    /// Print the eigenvalues, one `re im` pair per line.
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Write the Moore-Penrose inverse as a tensor document.
    Pinv {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Print the four Penrose residuals.
        #[arg(long)]
        residuals: bool,
    },
    /// Run the property battery, optionally including a supplied tensor.
    Check {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = battery::Config::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = battery::Config::default().instances)]
        instances: usize,
        #[arg(long, default_value_t = battery::Config::default().n_theta)]
        n: usize,
    },
    /// Write a reproducible square test tensor whose row block has the given shape.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Row-block extents, e.g. `2,2` for a 2x2x2x2 tensor.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    /// Diagonal with complex Gaussian entries.
    Diag,
    /// Haar-distributed unitary.
    Unitary,
    /// Outer product of two Gaussian tensors.
    Rank1,
    /// Dense complex Gaussian.
    Random,
}

/// Parses `args` (program name first), executes the command writing results
/// to stdout, and returns the exit code. Diagnostics go to stderr.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    run_with(args, &mut stdout, &mut stderr)
}

pub fn run_with<I, S>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn std::io::Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match thread_cap() {
        Ok(None) => execute(cli.command),
        Ok(Some(n)) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(CliError::Usage(format!("NR_THREADS: {e}"))),
        },
        Err(e) => Err(e),
    };
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            let _ = out.flush();
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "numrange: {e}");
            e.exit_code()
        }
    }
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("NR_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("NR_THREADS must be a positive integer, got `{v}`"))),
        },
        Err(e) => Err(CliError::Usage(format!("NR_THREADS: {e}"))),
    }
}

/// Text for stdout plus the exit code. A command can complete and still
/// report a failed check, which maps to a nonzero code.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

fn read_tensor(path: &Path) -> Result<Tensor64, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    document::parse_tensor(&text).map_err(|source| CliError::Document { path: path.to_owned(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn require_square(a: &Tensor64) -> Result<(), CliError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(CliError::Numeric {
            stage: "input validation",
            source: CoreError::NotSquare { row: a.row_shape().to_vec(), col: a.col_shape().to_vec() },
        })
    }
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Boundary { input, n, csv, svg, eigs, tol } => cmd_boundary(&input, n, &csv, svg.as_deref(), eigs, tol),
        Command::Radius { input, n } => {
            let a = read_tensor(&input)?;
            require_square(&a)?;
            let w = numrange_core::numerical_radius(&a, n).map_err(at("numerical radius"))?;
            Ok(Outcome::ok(format!("{w:.6}\n")))
        }
        Command::Spectrum { input } => {
            let a = read_tensor(&input)?;
            require_square(&a)?;
            let s = numrange_core::eigenvalues(&a, false).map_err(at("eigenvalues"))?;
            let mut text = String::new();
            for z in s.sorted_values() {
                let _ = writeln!(text, "{} {}", plot::sig17(z.re), plot::sig17(z.im));
            }
            Ok(Outcome::ok(text))
        }
        Command::Pinv { input, out, residuals } => {
            let a = read_tensor(&input)?;
            let p = numrange_core::moore_penrose(&a).map_err(at("pseudoinverse"))?;
            write_file(&out, &document::serialize_tensor(&p))?;
            let mut text = String::new();
            if residuals {
                let r = numrange_core::penrose_residuals(&a, &p).map_err(at("Penrose residuals"))?;
                for (name, v) in [("r1", r.r1), ("r2", r.r2), ("r3", r.r3), ("r4", r.r4)] {
                    let _ = writeln!(text, "{name} {v:.3e}");
                }
            }
            Ok(Outcome::ok(text))
        }
        Command::Check { input, seed, instances, n } => {
            let tensor = match &input {
                Some(path) => Some(read_tensor(path)?),
                None => None,
            };
            let config = battery::Config { seed, instances, n_theta: n };
            let report = battery::run(&config, tensor.as_ref());
            let code = if report.all_passed() { EXIT_OK } else { EXIT_NUMERIC };
            Ok(Outcome { stdout: report.render(), code })
        }
        Command::Gen { kind, shape, seed, out } => {
            let t = generate(kind, &shape, seed).map_err(at("generation"))?;
            write_file(&out, &document::serialize_tensor(&t))?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

fn generate(kind: Kind, half: &[usize], seed: u64) -> numrange_core::Result<Tensor64> {
    if half.is_empty() {
        return Err(CoreError::InvalidArgument("shape needs at least one extent".into()));
    }
    let mut rng = random::seeded(seed);
    match kind {
        Kind::Diag => {
            let n = half.iter().product();
            let diag: Vec<Complex64> = (0..n).map(|_| random::complex_gaussian(&mut rng)).collect();
            random::diagonal(half, &diag)
        }
        Kind::Unitary => random::haar_unitary(&mut rng, half),
        Kind::Rank1 => random::rank_deficient(&mut rng, half, 1),
        Kind::Random => random::gaussian_square(&mut rng, half),
    }
}

fn cmd_boundary(
    input: &Path,
    n: usize,
    csv: &Path,
    svg: Option<&Path>,
    eigs: bool,
    tol: f64,
) -> Result<Outcome, CliError> {
    let a = read_tensor(input)?;
    require_square(&a)?;
    let b = numrange_core::boundary(&a, n).map_err(at("boundary sampling"))?;
    let spectrum = if eigs || svg.is_some() {
        numrange_core::eigenvalues(&a, false).map_err(at("eigenvalues"))?.sorted_values()
    } else {
        Vec::new()
    };
    write_file(csv, &plot::boundary_csv(&b))?;
    if let Some(path) = svg {
        write_file(path, &plot::boundary_svg(&b, &spectrum))?;
    }

    let mut text = String::new();
    let defect = b.convexity_defect();
    let certified = defect <= tol;
    let _ = writeln!(text, "samples {}", b.samples.len());
    let _ = writeln!(text, "convexity defect {defect:.3e} {}", if certified { "certified" } else { "NOT certified" });
    let mut outside = 0;
    if eigs {
        for z in &spectrum {
            let margin = b
                .samples
                .iter()
                .map(|s| s.support - (Complex64::from_polar(1.0, s.theta) * z).re)
                .fold(f64::INFINITY, f64::min);
            let inside = margin >= -tol;
            if !inside {
                outside += 1;
            }
            let _ = writeln!(
                text,
                "eigenvalue {} {} margin {margin:.3e} {}",
                plot::sig17(z.re),
                plot::sig17(z.im),
                if inside { "PASS" } else { "FAIL" }
            );
        }
    }
    if !certified {
        return Err(CliError::Check { stage: "convexity certificate", detail: format!("defect {defect:.3e} exceeds {tol:e}") });
    }
    let code = if outside > 0 { EXIT_NUMERIC } else { EXIT_OK };
    if outside > 0 {
        let _ = writeln!(text, "{outside} eigenvalue(s) outside the sampled range");
    }
    Ok(Outcome { stdout: text, code })
}
