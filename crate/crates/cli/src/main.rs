use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hankel_spectra_cli::approx::{approx_csv, approx_report, compress, ArithmeticArg};
use hankel_spectra_cli::boundary::{boundary_csv, boundary_report};
use hankel_spectra_cli::exact::{exact_csv, exact_report};
use hankel_spectra_cli::output::{emit, to_json};
use hankel_spectra_cli::verify::{self, VerifyOptions};
use hankel_spectra_cli::{parse_symbol, Format, RunConfig, UsageError};

const THREADS_ENV: &str = "HANKEL_SPECTRA_THREADS";

/// Spectra of Hermitian squares of Hankel operators on the Bergman space of the polydisc.
///
/// SPEC is an expression such as `zb1*(zb2+1) + (1/2+i)*z1*zb2^2`, a JSON term list,
/// or `@path` to a file holding either.
#[derive(Parser, Debug)]
#[command(name = "hankel-spectra", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Per-coordinate cap on alpha for closed-form spectra.
    #[arg(long, global = true, default_value_t = 10)]
    cap: u32,
    /// Degree cap N of the compression basis {alpha : max alpha <= N}.
    #[arg(long, global = true, default_value_t = 12)]
    degree: u32,
    /// Boundary points sampled on the circle.
    #[arg(long, global = true, default_value_t = 256)]
    samples: usize,
    /// Gauss-Legendre nodes for radial quadrature.
    #[arg(long, global = true, default_value_t = 64)]
    nodes: usize,
    /// Containment tolerance, in (0, 1).
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Ambient dimension; defaults to the largest coordinate the symbol uses.
    #[arg(long, global = true)]
    dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form spectrum of a single monomial c*z^n*zb^m.
    Exact { spec: String },
    /// Eigenvalues of the Galerkin compression at degree cap N.
    Approx {
        spec: String,
        #[arg(long, value_enum, default_value_t = ArithmeticArg::Auto)]
        arithmetic: ArithmeticArg,
        /// Also write the matrix dump to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Slice-norm profile along a coordinate and the predicted essential set.
    Boundary {
        spec: String,
        /// One-based coordinate that is sliced.
        #[arg(long, default_value_t = 1)]
        coord: usize,
    },
    /// Run verification suites; exits 1 if any fails.
    Verify {
        /// Suite to run (repeatable); defaults to every standard suite.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Fixture file replacing the embedded one.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Matrix dump to check (adds the `matrix` suite).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Symbol the matrix dump was assembled from.
        #[arg(long)]
        symbol: Option<String>,
    },
}

impl GlobalArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            alpha_cap: self.cap,
            degree_cap: self.degree,
            nodes: self.nodes,
            samples: self.samples,
            tol: self.tol,
            format: self.format,
            out: self.out.clone(),
            dim: self.dim,
        }
    }
}

fn configure_threads() -> Result<(), UsageError> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| UsageError::new(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| UsageError::new(e.to_string()))
}

/// Returns whether the command succeeded (verification passed).
fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let cfg = cli.global.config();
    cfg.validate()?;
    let out = cfg.out.as_deref();
    match &cli.command {
        Command::Exact { spec } => {
            let report = exact_report(&parse_symbol(spec, cfg.dim)?, &cfg)?;
            let text = match cfg.format {
                Format::Json => to_json(&report)?,
                Format::Csv => exact_csv(&report)?,
            };
            emit(&text, out)?;
        }
        Command::Approx { spec, arithmetic, dump } => {
            let mat = compress(&parse_symbol(spec, cfg.dim)?, &cfg, *arithmetic)?;
            if let Some(path) = dump {
                std::fs::write(path, mat.dump()).with_context(|| format!("writing {}", path.display()))?;
            }
            let report = approx_report(&mat)?;
            let text = match cfg.format {
                Format::Json => to_json(&report)?,
                Format::Csv => approx_csv(&report)?,
            };
            emit(&text, out)?;
        }
        Command::Boundary { spec, coord } => {
            let report = boundary_report(&parse_symbol(spec, cfg.dim)?, *coord, &cfg)?;
            let text = match cfg.format {
                Format::Json => to_json(&report)?,
                Format::Csv => boundary_csv(&report)?,
            };
            emit(&text, out)?;
        }
        Command::Verify { suites, fixtures, matrix, symbol } => {
            if cfg.format == Format::Csv {
                return Err(UsageError::new("`verify` reports are JSON only").into());
            }
            let opts = VerifyOptions {
                suites: suites.clone(),
                fixtures: fixtures.clone(),
                matrix: matrix.clone(),
                symbol: symbol.clone(),
            };
            let report = verify::run(&opts, &cfg)?;
            emit(&to_json(&report)?, out)?;
            if !report.passed {
                eprintln!("verification failed: {}", report.failed_suites().join(", "));
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
