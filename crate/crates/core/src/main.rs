//! `pauli-bose`: run the verification suites and dump operator matrices.
//!
//! Exit status is 0 when every record passes, 1 on any failing record and 2
//! on a usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pauli_bose::coherent::ResolutionVariant;
use pauli_bose::report::{
    dump_operator, grassmann_suite, quadrature_suite, render_matrix, verify_suite, CheckRecord,
    DumpOp, OutputFormat, VerificationReport,
};

#[derive(Parser, Debug)]
#[command(name = "pauli-bose", version)]
#[command(about = "Verify Bose representations of the Pauli spin operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Functional equation and the (anti)commutator catalog over a (dim, l) grid
    Verify {
        /// Even truncation dimensions, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Exponents l >= 1, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        ls: Vec<u32>,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Even/odd coherent-state resolutions by plane quadrature
    Quadrature {
        #[arg(long)]
        dim: usize,
        /// Gauss-Laguerre order K
        #[arg(long)]
        radial: usize,
        /// Number of equally spaced angles M
        #[arg(long)]
        angular: usize,
        /// Comma separated variant names, or `all`
        #[arg(long, value_delimiter = ',', default_value = "all")]
        variants: Vec<String>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Grassmann eigenvalue equations for sigma_minus
    Grassmann {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        ls: Vec<u32>,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Print an operator matrix
    Dump {
        /// sigma_minus, sigma_plus, sigma_three, p_even or p_odd
        #[arg(long)]
        op: DumpOp,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        l: u32,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
}

struct Usage(String);

fn check_dims(dims: &[usize]) -> Result<(), Usage> {
    if dims.is_empty() {
        return Err(Usage("--dims must not be empty".into()));
    }
    match dims.iter().find(|d| **d < 2 || **d % 2 != 0) {
        Some(d) => Err(Usage(format!("dimension {d} is not an even integer >= 2"))),
        None => Ok(()),
    }
}

fn check_ls(ls: &[u32]) -> Result<(), Usage> {
    if ls.is_empty() {
        return Err(Usage("--ls must not be empty".into()));
    }
    if ls.contains(&0) {
        return Err(Usage("exponent l must be >= 1".into()));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<(), Usage> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Usage(format!("tolerance {tol} must be finite and >= 0")));
    }
    Ok(())
}

fn parse_variants(names: &[String]) -> Result<Vec<ResolutionVariant>, Usage> {
    if names.iter().any(|n| n == "all") {
        return Ok(ResolutionVariant::ALL.to_vec());
    }
    if names.is_empty() {
        return Err(Usage("--variants must not be empty".into()));
    }
    let mut out = Vec::new();
    for name in names {
        let v = name.parse::<ResolutionVariant>().map_err(Usage)?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Prints the report; returns whether every record passed.
fn emit(records: Vec<CheckRecord>, format: OutputFormat) -> bool {
    let report = VerificationReport::new(records);
    print!("{}", report.render(format));
    if format == OutputFormat::Json {
        println!();
    }
    for r in report.records.iter().filter(|r| r.warning.is_some()) {
        eprintln!(
            "warning: {}: {}",
            r.identity_id,
            r.warning.as_deref().unwrap_or_default()
        );
    }
    report.all_pass()
}

fn run(cli: Cli) -> Result<bool, Usage> {
    let usage = |e: pauli_bose::Error| Usage(e.to_string());
    match cli.command {
        Command::Verify {
            dims,
            ls,
            tol,
            format,
        } => {
            check_dims(&dims)?;
            check_ls(&ls)?;
            check_tol(tol)?;
            Ok(emit(verify_suite(&dims, &ls, tol).map_err(usage)?, format))
        }
        Command::Quadrature {
            dim,
            radial,
            angular,
            variants,
            tol,
            format,
        } => {
            check_tol(tol)?;
            let variants = parse_variants(&variants)?;
            let records = quadrature_suite(dim, radial, angular, &variants, tol).map_err(usage)?;
            Ok(emit(records, format))
        }
        Command::Grassmann { dims, ls, format } => {
            check_dims(&dims)?;
            check_ls(&ls)?;
            Ok(emit(grassmann_suite(&dims, &ls).map_err(usage)?, format))
        }
        Command::Dump { op, dim, l, format } => {
            let matrix = dump_operator(op, dim, l).map_err(usage)?;
            let text = render_matrix(&matrix, format);
            print!("{text}");
            if format == OutputFormat::Json {
                println!();
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
