//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code:
//! 0 success, 1 check failure, 2 parse or I/O error, 3 shape error,
//! 4 solver failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::binary_cubic::BinaryCubic;
use crate::error::{Error, Result};
use crate::homotopy::{h_spectrum, HomotopyConfig};
use crate::search::{run_search_streaming, write_csv, write_summary_line, SamplingClass, SearchOutcome};
use crate::spectrum::SpectrumSummary;
use crate::tensor::{json as tensor_json, kron};
use crate::verify;
use crate::zeig::{dominant_zeig, DEFAULT_STARTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SHAPE: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

/// Symmetric tensor eigenvalues and Kronecker products.
#[derive(Debug, Parser)]
#[command(name = "kron-heig", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kronecker product LEFT ⊗ RIGHT of two tensors of equal order.
    Kron {
        /// Left factor (B in B ⊗ A).
        left: PathBuf,
        /// Right factor (A in B ⊗ A).
        right: PathBuf,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All complex H-eigenpairs by homotopy continuation.
    Heig {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Agreement tolerance against the quartic route (2 x 2 x 2 only).
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Dominant real Z-eigenpair by the shifted power method.
    Zeig {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_STARTS)]
        starts: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Characteristic quartic and hyperdeterminant of a 2 x 2 x 2 tensor.
    Charpoly {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Reproduces the 2 x 2 x 2 counterexample from built-in data.
    VerifyPaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Perturbs the built-in data (negative control).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Random search for multiplicativity failures.
    Search {
        #[arg(long, default_value = "uniform")]
        class: SamplingClass,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON-lines file receiving every record and the summary.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// CSV file receiving the evaluated records.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// `json` streams JSON-lines to stdout; `table` prints counterexamples
        /// and a summary.
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Json(_) | Error::Io(_) => EXIT_PARSE,
        Error::InvalidShape { .. }
        | Error::IndexOutOfRange { .. }
        | Error::IndexArity { .. }
        | Error::ConflictingOrbit { .. }
        | Error::DimensionMismatch { .. }
        | Error::OrderMismatch { .. }
        | Error::Unsupported { .. }
        | Error::Intractable { .. } => EXIT_SHAPE,
        Error::NotReal { .. }
        | Error::DegeneratePolynomial
        | Error::RootsNotConverged { .. }
        | Error::NotAnEigenvalue { .. }
        | Error::ZeroIterate
        | Error::NoConvergedRun => EXIT_SOLVER,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Kron { left, right, output } => cmd_kron(left, right, output.as_deref(), out),
        Command::Heig {
            input,
            seed,
            format,
            tol,
        } => cmd_heig(input, *seed, *format, *tol, out),
        Command::Zeig {
            input,
            seed,
            starts,
            format,
        } => cmd_zeig(input, *seed, *starts, *format, out),
        Command::Charpoly { input, format } => cmd_charpoly(input, *format, out),
        Command::VerifyPaper {
            seed,
            format,
            corrupt,
        } => cmd_verify(*seed, *format, *corrupt, out, err),
        Command::Search {
            class,
            samples,
            seed,
            output,
            csv,
            format,
        } => cmd_search(
            *class,
            *samples,
            *seed,
            output.as_deref(),
            csv.as_deref(),
            *format,
            out,
        ),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn cmd_kron(left: &Path, right: &Path, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let b = tensor_json::read_path(left)?;
    let a = tensor_json::read_path(right)?;
    let c = kron(&b, &a)?;
    match output {
        Some(p) => {
            let mut w = create(p)?;
            tensor_json::to_writer(&c, &mut w)?;
            w.flush()?;
        }
        None => tensor_json::to_writer(&c, &mut *out)?,
    }
    Ok(EXIT_OK)
}

fn fmt_c(z: Complex64) -> String {
    format!(
        "{:.12} {} {:.12}i",
        z.re,
        if z.im < 0.0 { '-' } else { '+' },
        z.im.abs()
    )
}

/// Largest distance from a point of either set to the nearest point of the
/// other.
fn set_distance(p: &[Complex64], q: &[Complex64]) -> f64 {
    let one_way = |p: &[Complex64], q: &[Complex64]| {
        p.iter()
            .map(|a| q.iter().map(|b| (a - b).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    one_way(p, q).max(one_way(q, p))
}

fn write_spectrum_table(s: &SpectrumSummary, out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "{:>3}  {:<36} {:>15} {:>10} {:>5}",
        "#", "lambda", "|lambda|", "residual", "paths"
    )?;
    for (k, p) in s.eigenpairs.iter().enumerate() {
        writeln!(
            out,
            "{:>3}  {:<36} {:>15.12} {:>10.2e} {:>5}",
            k + 1,
            fmt_c(p.lambda),
            p.lambda.norm(),
            p.residual,
            p.multiplicity
        )?;
    }
    writeln!(out, "\neigenvectors (unit norm):")?;
    for (k, p) in s.eigenpairs.iter().enumerate() {
        let comps: Vec<String> = p.x.iter().map(|&z| fmt_c(z)).collect();
        writeln!(out, "{:>3}  [{}]", k + 1, comps.join(", "))?;
    }
    writeln!(out, "\nspectral radius: {:.12}", s.spectral_radius)?;
    writeln!(
        out,
        "eigenpairs found: {} of {} expected{}",
        s.found_count,
        s.expected_count,
        if s.incomplete {
            " (fewer than expected: repeated eigenvalues or missed paths)"
        } else {
            ""
        }
    )?;
    if let Some(d) = &s.det_check {
        writeln!(
            out,
            "product of eigenvalues: {}  hyperdeterminant: {:.12}  difference: {:.2e}",
            fmt_c(d.product_of_eigenvalues),
            d.hyperdeterminant,
            d.error()
        )?;
    }
    Ok(())
}

fn cmd_heig(input: &Path, seed: u64, format: Format, tol: f64, out: &mut dyn Write) -> Result<i32> {
    let t = tensor_json::read_path(input)?;
    let spectrum = h_spectrum(&t, &HomotopyConfig::with_seed(seed))?;
    if spectrum.summary.eigenpairs.is_empty() {
        return Err(Error::NoConvergedRun);
    }
    let quartic = if t.order() == 3 && t.dim() == 2 {
        let q = BinaryCubic::from_tensor(&t)?.h_spectrum()?;
        let diff = set_distance(&q.eigenvalues(), &spectrum.summary.eigenvalues());
        Some((q, diff))
    } else {
        None
    };
    match format {
        Format::Table => {
            writeln!(out, "tensor: order {}, dimension {}", t.order(), t.dim())?;
            write_spectrum_table(&spectrum.summary, out)?;
            writeln!(
                out,
                "paths: {} tracked, {} converged, {} diverged, {} stalled, {} attempt(s)",
                spectrum.stats.tracked,
                spectrum.stats.converged,
                spectrum.stats.diverged,
                spectrum.stats.stalled,
                spectrum.stats.attempts
            )?;
            if let Some((_, diff)) = &quartic {
                writeln!(
                    out,
                    "quartic route: {} (max difference {diff:.2e}, tolerance {tol:e})",
                    if *diff <= tol { "agrees" } else { "DISAGREES" }
                )?;
            }
        }
        Format::Json => {
            let mut doc = json!({
                "order": t.order(),
                "dim": t.dim(),
                "spectrum": spectrum.summary,
                "paths": spectrum.stats,
            });
            if let Some((q, diff)) = &quartic {
                doc["quartic_route"] = json!({
                    "eigenvalues": q.eigenvalues(),
                    "max_difference": diff,
                    "tolerance": tol,
                    "agrees": *diff <= tol,
                });
            }
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_zeig(input: &Path, seed: u64, starts: usize, format: Format, out: &mut dyn Write) -> Result<i32> {
    let t = tensor_json::read_path(input)?;
    let p = dominant_zeig(&t, starts, seed)?;
    match format {
        Format::Table => {
            writeln!(out, "lambda:     {:.12}", p.lambda)?;
            let xs: Vec<String> = p.x.iter().map(|v| format!("{v:.12}")).collect();
            writeln!(out, "x:          [{}]", xs.join(", "))?;
            writeln!(out, "residual:   {:.2e}", p.residual)?;
            writeln!(out, "iterations: {}", p.iterations)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &p)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_charpoly(input: &Path, format: Format, out: &mut dyn Write) -> Result<i32> {
    let t = tensor_json::read_path(input)?;
    let c = BinaryCubic::from_tensor(&t)?;
    let p = c.char_poly();
    let s = c.h_spectrum()?;
    let coeffs: Vec<f64> = p.coeffs().iter().map(|z| z.re).collect();
    match format {
        Format::Table => {
            writeln!(out, "hyperdeterminant: {:.12}", c.hyperdet())?;
            writeln!(out, "coefficients (constant term first):")?;
            for (k, v) in coeffs.iter().enumerate() {
                writeln!(out, "  lambda^{k}: {v:.12}")?;
            }
            writeln!(out, "roots:")?;
            for l in s.eigenvalues() {
                writeln!(out, "  {}", fmt_c(l))?;
            }
            writeln!(out, "spectral radius: {:.12}", s.spectral_radius)?;
        }
        Format::Json => {
            let doc = json!({
                "tensor": c,
                "hyperdeterminant": c.hyperdet(),
                "coefficients": coeffs,
                "spectrum": s,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    seed: u64,
    format: Format,
    corrupt: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut inputs = if corrupt {
        verify::Inputs::corrupted()
    } else {
        verify::Inputs::reference()
    };
    inputs.seed = seed;
    let report = verify::run(&inputs)?;
    match format {
        Format::Table => {
            let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &report.checks {
                writeln!(
                    out,
                    "{}  {:<width$}  {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(
                &mut *out,
                &json!({ "passed": report.passed(), "checks": report.checks }),
            )?;
            writeln!(out)?;
        }
    }
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        writeln!(err, "failed: {}", names.join(", "))?;
        Ok(EXIT_CHECK)
    }
}

fn cmd_search(
    class: SamplingClass,
    samples: usize,
    seed: u64,
    output: Option<&Path>,
    csv: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut file = output.map(create).transpose()?;
    let mut records = Vec::new();
    let mut failure: Option<std::io::Error> = None;
    let mut emit = |o: &SearchOutcome| -> std::io::Result<()> {
        if let Some(f) = file.as_mut() {
            serde_json::to_writer(&mut *f, o)?;
            writeln!(f)?;
            f.flush()?;
        }
        match (format, o) {
            (Format::Json, _) => {
                serde_json::to_writer(&mut *out, o)?;
                writeln!(out)?;
            }
            (Format::Table, SearchOutcome::Record(r)) if r.is_counterexample => writeln!(
                out,
                "sample {:>5}  A = {:?}  B = {:?}  gap {:.6e}",
                r.index,
                r.tensor_a.as_array(),
                r.tensor_b.as_array(),
                r.gap
            )?,
            (Format::Table, SearchOutcome::Skipped(s)) => {
                writeln!(out, "sample {:>5}  skipped: {}", s.index, s.reason)?
            }
            _ => {}
        }
        if let SearchOutcome::Record(r) = o {
            records.push(r.clone());
        }
        Ok(())
    };
    let summary = run_search_streaming(class, samples, seed, |o| {
        if failure.is_none() {
            if let Err(e) = emit(o) {
                failure = Some(e);
            }
        }
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    if let Some(f) = file.as_mut() {
        write_summary_line(&summary, &mut *f)?;
        f.flush()?;
    }
    if let Some(p) = csv {
        write_csv(&records, create(p)?)?;
    }
    match format {
        Format::Json => write_summary_line(&summary, &mut *out)?,
        Format::Table => {
            writeln!(out, "class:           {}", summary.class)?;
            writeln!(
                out,
                "samples:         {} ({} skipped)",
                summary.samples, summary.skipped
            )?;
            writeln!(
                out,
                "counterexamples: {} ({:.1}%)",
                summary.counterexamples,
                100.0 * summary.frequency
            )?;
            writeln!(out, "max gap:         {:.6e}", summary.max_gap)?;
            if let Some(b) = &summary.best {
                writeln!(
                    out,
                    "best:            sample {}  A = {:?}  B = {:?}",
                    b.index,
                    b.tensor_a.as_array(),
                    b.tensor_b.as_array()
                )?;
                writeln!(
                    out,
                    "                 rho(A) {:.12}  rho(B) {:.12}  rho(C) {:.12}",
                    b.rho_a, b.rho_b, b.rho_c
                )?;
                if let Some(s) = b.reshape_svals {
                    writeln!(
                        out,
                        "                 reshape singular values ({:.6}, {:.6})",
                        s[0], s[1]
                    )?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("kron-heig").chain(args.iter().copied()),
            &mut o,
            &mut e,
        );
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn parse_errors_exit_2() {
        assert_eq!(run_args(&[]).0, EXIT_PARSE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_PARSE);
        assert_eq!(run_args(&["search", "--class", "gaussian"]).0, EXIT_PARSE);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        for sub in ["kron", "heig", "zeig", "charpoly", "verify-paper", "search"] {
            assert!(out.contains(sub), "{sub}");
        }
        assert!(!out.contains("corrupt"));
    }

    #[test]
    fn missing_file_exits_2() {
        let (code, _, err) = run_args(&["heig", "/nonexistent/t.json"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn set_distance_is_symmetric() {
        let p = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        let q = [Complex64::new(1.0, 0.0)];
        assert_eq!(set_distance(&p, &q), 1.0);
        assert_eq!(set_distance(&q, &p), 1.0);
    }
}
