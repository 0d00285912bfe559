//! Command-line front end.

use std::f64::consts::FRAC_PI_8;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, ErrorClass, Result};
use crate::gates::{conjugation_search, qubit_unitary, rotation_identity_check};
use crate::integrals::{BasisName, BasisSet};
use crate::io::{render_svg, write_csv, write_summary, Summary};
use crate::magic::{analytic_fs2_theta, analytic_mana_theta, analytic_s2_theta};
use crate::par::Execution;
use crate::scan::{curvature_analysis, evaluate_point, run_scan_with, ScanConfig};
use crate::scf::atomic_asymptote;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "bondmagic", version, about = "Fermionic magic of H2 across dissociation")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Scan the bond length, writing CSV, summary and SVG artifacts.
    Scan {
        #[arg(long, default_value = "sto-3g")]
        basis: String,
        #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
        rmin: f64,
        #[arg(long, default_value_t = 3.5, allow_negative_numbers = true)]
        rmax: f64,
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Evaluate geometries on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Ground state and magic at a single bond length (angstrom).
    Point {
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value = "sto-3g")]
        basis: String,
    },
    /// Closed-form S2, FS2 and mana of the two-determinant state.
    Analytic {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        thetas: Vec<f64>,
    },
    /// Conjugation of the mixing unitary onto T-type gates.
    VerifyGates {
        #[arg(long, allow_negative_numbers = true, default_value_t = -FRAC_PI_8)]
        theta: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Scan {
        config: ScanConfig,
        out: Option<PathBuf>,
        summary: Option<PathBuf>,
        svg: Option<PathBuf>,
        execution: Execution,
    },
    Point {
        basis: BasisName,
        ell: f64,
    },
    Analytic {
        thetas: Vec<f64>,
    },
    VerifyGates {
        theta: f64,
    },
}

/// Outcome of argument parsing that is not a runnable config.
#[derive(Debug)]
pub enum ArgsError {
    /// Help or version text; print it and exit successfully.
    Display(String),
    Usage(String),
}

fn basis_name(s: &str) -> std::result::Result<BasisName, ArgsError> {
    s.parse().map_err(|e: Error| ArgsError::Usage(e.to_string()))
}

/// Strict parsing of `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, ArgsError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            ArgsError::Display(e.to_string())
        }
        _ => ArgsError::Usage(e.to_string()),
    })?;
    let usage = |e: Error| ArgsError::Usage(e.to_string());
    Ok(match cli.command {
        Cmd::Scan {
            basis,
            rmin,
            rmax,
            step,
            out,
            summary,
            svg,
            sequential,
        } => RunConfig::Scan {
            config: ScanConfig::new(basis_name(&basis)?, rmin, rmax, step).map_err(usage)?,
            out,
            summary,
            svg,
            execution: if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            },
        },
        Cmd::Point { r, basis } => {
            if !(r.is_finite() && r > 0.0) {
                return Err(ArgsError::Usage(format!("bond length must be positive, got {r}")));
            }
            RunConfig::Point {
                basis: basis_name(&basis)?,
                ell: r,
            }
        }
        Cmd::Analytic { thetas } => {
            if let Some(t) = thetas.iter().find(|t| !t.is_finite()) {
                return Err(ArgsError::Usage(format!("theta must be finite, got {t}")));
            }
            RunConfig::Analytic { thetas }
        }
        Cmd::VerifyGates { theta } => {
            if !theta.is_finite() {
                return Err(ArgsError::Usage(format!("theta must be finite, got {theta}")));
            }
            RunConfig::VerifyGates { theta }
        }
    })
}

pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let w = |e: std::io::Error| Error::io("<stdout>", e);
    match config {
        RunConfig::Scan {
            config,
            out: csv,
            summary,
            svg,
            execution,
        } => {
            let series = run_scan_with(config, *execution)?;
            if let Some(path) = csv {
                write_csv(&series, path)?;
            }
            let analysis = curvature_analysis(&series)?;
            let s = Summary::new(&series, Some(&analysis))?;
            if let Some(path) = summary {
                write_summary(&s, path)?;
            }
            if let Some(path) = svg {
                render_svg(&series, &analysis, path)?;
            }
            out.write_all(s.to_text().as_bytes()).map_err(w)?;
        }
        RunConfig::Point { basis, ell } => {
            let set = BasisSet::builtin(*basis);
            let e_h = atomic_asymptote(&set)?;
            let (p, _) = evaluate_point(*ell, &set, e_h, Execution::default())?;
            writeln!(
                out,
                "basis: {basis}\nell_angstrom: {}\ne_total_hartree: {:?}\ne_binding_hartree: {:?}\ntheta_rad: {:?}\ntwo_det_weight: {:?}\ns2: {:?}\nfs2: {:?}\nmana: {:?}",
                p.ell, p.e_total, p.e_binding, p.theta, p.two_det_weight, p.s2, p.fs2, p.mana
            )
            .map_err(w)?;
        }
        RunConfig::Analytic { thetas } => {
            writeln!(out, "theta_rad,s2,fs2,mana").map_err(w)?;
            for &t in thetas {
                writeln!(
                    out,
                    "{t:?},{:?},{:?},{:?}",
                    analytic_s2_theta(t),
                    analytic_fs2_theta(t),
                    analytic_mana_theta(t)
                )
                .map_err(w)?;
            }
        }
        RunConfig::VerifyGates { theta } => {
            let view = qubit_unitary(*theta);
            let search = conjugation_search(&view.u_matrix);
            let sign = rotation_identity_check(*theta)?;
            writeln!(out, "theta_rad: {theta:?}").map_err(w)?;
            writeln!(out, "rotation_sign: {sign}").map_err(w)?;
            writeln!(out, "clifford_hits: {}", search.clifford_hits.len()).map_err(w)?;
            for h in &search.clifford_hits {
                writeln!(out, "  {} -> {} (phase {:.6}{:+.6}i)", h.element, h.target.label(), h.phase.re, h.phase.im)
                    .map_err(w)?;
            }
            writeln!(out, "pauli_hits: {}", search.pauli_hits.len()).map_err(w)?;
            for h in &search.pauli_hits {
                writeln!(out, "  {} -> {}", h.element, h.target.label()).map_err(w)?;
            }
        }
    }
    Ok(())
}

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Usage => EXIT_USAGE,
        ErrorClass::Numerical => EXIT_NUMERICAL,
        ErrorClass::Io => EXIT_IO,
    }
}

/// Full entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(ArgsError::Display(text)) => {
            print!("{text}");
            return 0;
        }
        Err(ArgsError::Usage(msg)) => {
            eprintln!("{}", msg.trim_end());
            return EXIT_USAGE;
        }
    };
    let stdout = std::io::stdout();
    match execute(&config, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
