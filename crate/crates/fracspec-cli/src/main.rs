//! `fracspec`: power spectra of real sequences at an integer period and
//! its associated fractional periods.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 internal numerical
//! inconsistency (the folded path violating a guarantee the oracle
//! checks).

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use fracspec::oracle::oracle_fps_at_period;
use fracspec::{scan, spectrum_for_modulus};

mod input;
mod report;
mod svg;

use input::InputArgs;
use report::{fmt_significant, ScanReport, SpectrumReport};

/// Largest relative error tolerated between the folded path and the
/// brute-force oracle in `verify`.
const VERIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    /// Invalid input or usage; exit 1.
    Invalid(String),
    /// Violated numerical guarantee; exit 2.
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(message) | CliError::Internal(message) => f.write_str(message),
        }
    }
}

impl From<fracspec::Error> for CliError {
    fn from(e: fracspec::Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fracspec",
    version,
    about = "Fractional-period power spectra of real sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute FPS(l/k) for k = 1..=floor(l/2) at one modulus.
    Spectrum(SpectrumArgs),
    /// Scan a modulus range and report the strongest periods.
    Scan(ScanArgs),
    /// Cross-check the folded path against the brute-force DFT oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Modulus (integer period) to analyze; at least 2.
    #[arg(long)]
    l: usize,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the report here instead of stdout (atomic).
    #[arg(long)]
    output: Option<PathBuf>,

    /// Also write an SVG bar chart of the spectrum (atomic).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ScanArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Smallest modulus to scan.
    #[arg(long = "l-min", default_value_t = 2)]
    l_min: usize,

    /// Largest modulus to scan; defaults to half the sequence length so
    /// every spectrum reflects at least two folds.
    #[arg(long = "l-max")]
    l_max: Option<usize>,

    /// Number of peak rows to report.
    #[arg(long, default_value_t = 10)]
    top: usize,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the report here instead of stdout (atomic).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Modulus (integer period); at least 2.
    #[arg(long)]
    l: usize,

    /// Frequency index, 1..=l-1.
    #[arg(long)]
    k: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    if args.l < 2 {
        return Err(CliError::Invalid(format!(
            "--l must be at least 2, got {}",
            args.l
        )));
    }
    let loaded = input::load(&args.input)?;
    let spectrum = spectrum_for_modulus(&loaded.sequence, args.l)?;
    let report = SpectrumReport::new(&loaded, &spectrum);

    let body = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    // Render everything before writing anything so a failure leaves no
    // partial outputs.
    let chart = args
        .svg
        .as_deref()
        .map(|_| svg::render_svg(&report))
        .transpose()?;

    emit(args.output.as_deref(), &body)?;
    if let (Some(path), Some(chart)) = (args.svg.as_deref(), chart) {
        write_atomic(path, &chart)?;
    }
    Ok(())
}

fn cmd_scan(args: ScanArgs) -> Result<(), CliError> {
    if args.top == 0 {
        return Err(CliError::Invalid("--top must be at least 1".to_string()));
    }
    let loaded = input::load(&args.input)?;
    let l_max = args.l_max.unwrap_or(loaded.sequence.len() / 2);
    let spectra = scan(&loaded.sequence, args.l_min, l_max)?;
    let report = ScanReport::new(&loaded, args.l_min, l_max, &spectra, args.top);
    if report.all_zero {
        eprintln!("warning: every FPS in the scanned range is zero");
    }
    let body = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    emit(args.output.as_deref(), &body)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    if args.l < 2 {
        return Err(CliError::Invalid(format!(
            "--l must be at least 2, got {}",
            args.l
        )));
    }
    if args.k == 0 || args.k >= args.l {
        return Err(CliError::Invalid(format!(
            "--k must be in 1..={}, got {}",
            args.l - 1,
            args.k
        )));
    }
    let loaded = input::load(&args.input)?;
    let spectrum = spectrum_for_modulus(&loaded.sequence, args.l)?;
    let mut fast = spectrum.power(args.k).expect("k validated against l");

    // Test-only fault injection so the failure path stays exercised;
    // compiled out of release builds.
    #[cfg(debug_assertions)]
    if std::env::var_os("FRACSPEC_VERIFY_FAULT").is_some() {
        fast = fast * 1.01 + 1.0;
    }

    let reference = oracle_fps_at_period(&loaded.sequence, args.l, args.k)?;
    let abs_error = (fast - reference).abs();
    let rel_error = abs_error / reference.abs().max(1.0);
    println!("modulus,k,fast,oracle,abs_error,rel_error");
    println!(
        "{},{},{},{},{},{}",
        args.l,
        args.k,
        fmt_significant(fast, 12),
        fmt_significant(reference, 12),
        fmt_significant(abs_error, 12),
        fmt_significant(rel_error, 12)
    );
    if rel_error <= VERIFY_TOLERANCE {
        Ok(())
    } else {
        Err(CliError::Internal(format!(
            "folded path disagrees with the oracle at l = {}, k = {}: relative error {rel_error:e}",
            args.l, args.k
        )))
    }
}

fn emit(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(path) => write_atomic(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Writes via a temporary file in the target directory plus an atomic
/// rename, so failures never leave partial output files.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| {
        CliError::Invalid(format!(
            "cannot create temporary file in {}: {e}",
            dir.display()
        ))
    })?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}
