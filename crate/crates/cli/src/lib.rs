//! Verification pipeline behind the `nilkit` binary.
//!
//! [`run`] dispatches a [`RunConfig`] to one subcommand and writes a line
//! report. Exit codes: 0 when every assertion passed, 1 on an assertion
//! failure, 2 on input errors.

pub mod args;
mod commands;
mod inversion;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use nilkit_core::catalog::resolve;
use nilkit_core::{parse_algebra_file, AlgebraFile, Q};

pub use report::{OutputFormat, Report, Table};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable holding the default Gauss–Hermite order.
pub const QUAD_ORDER_ENV: &str = "NILKIT_QUAD_ORDER";

/// Where an algebra comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    File(PathBuf),
    Catalog(String),
}

impl AlgebraSource {
    /// `catalog:<name>` names a catalog entry; anything else is a path,
    /// falling back to a catalog name when no such file exists.
    pub fn parse(s: &str) -> Self {
        if let Some(name) = s.strip_prefix("catalog:") {
            return Self::Catalog(name.to_string());
        }
        if !Path::new(s).exists() && resolve(s).is_ok() {
            return Self::Catalog(s.to_string());
        }
        Self::File(PathBuf::from(s))
    }

    pub fn label(&self) -> String {
        match self {
            Self::File(p) => p.display().to_string(),
            Self::Catalog(n) => format!("catalog:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative error of `recovered/κ` against `f(x)`.
    pub inversion_rel: f64,
    /// Relative spread of `κ` across test functions.
    pub kappa_rel: f64,
    /// Closed form against quadrature.
    pub quadrature_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { inversion_rel: 1e-6, kappa_rel: 1e-5, quadrature_rel: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InversionDemo {
    pub algebra: Option<AlgebraSource>,
    pub d: Option<usize>,
    pub zeta_max: f64,
    pub quad_order: usize,
    pub points: usize,
    pub functions: usize,
    /// Also write the CSV rendering here.
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Check { algebra: AlgebraSource },
    Pfaffian { algebra: AlgebraSource, samples: usize },
    Satake { algebra: AlgebraSource },
    Signature { algebra: AlgebraSource, zeta: Option<Vec<Q>> },
    CatalogList,
    CatalogBuild { name: String, out: Option<PathBuf> },
    CatalogVerify { name: Option<String> },
    InversionDemo(InversionDemo),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub tolerances: Tolerances,
    /// Seed for every random sweep; a fixed seed gives byte-identical output.
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self { command, format: OutputFormat::Text, tolerances: Tolerances::default(), seed: 0 }
    }
}

/// Bad input: unreadable file, malformed algebra, unknown name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl From<nilkit_core::AlgebraError> for InputError {
    fn from(e: nilkit_core::AlgebraError) -> Self {
        Self(e.to_string())
    }
}

impl From<nilkit_harmonics::HarmonicsError> for InputError {
    fn from(e: nilkit_harmonics::HarmonicsError) -> Self {
        Self(e.to_string())
    }
}

pub(crate) enum Output {
    Report(Report),
    /// Emitted verbatim; used for algebra files written to stdout.
    Raw(String),
}

pub(crate) struct Loaded {
    pub label: String,
    pub file: AlgebraFile,
}

pub(crate) fn load(src: &AlgebraSource) -> Result<Loaded, InputError> {
    let file = match src {
        AlgebraSource::File(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            parse_algebra_file(&text).map_err(|e| InputError(format!("{}: {e}", p.display())))?
        }
        AlgebraSource::Catalog(name) => {
            let entry = resolve(name)?;
            let inst = entry.build()?;
            let derivations = entry.derivations(&inst);
            AlgebraFile { algebra: inst.algebra, j: Some(inst.j), derivations: Some(derivations) }
        }
    };
    Ok(Loaded { label: src.label(), file })
}

/// Runs one subcommand, writing the report to `out` and input errors to
/// `err`. Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Check { algebra } => commands::check(algebra),
        Command::Pfaffian { algebra, samples } => commands::pfaffian(algebra, *samples, config.seed),
        Command::Satake { algebra } => commands::satake(algebra),
        Command::Signature { algebra, zeta } => commands::signature(algebra, zeta.as_deref()),
        Command::CatalogList => Ok(commands::catalog_list()),
        Command::CatalogBuild { name, out } => commands::catalog_build(name, out.as_deref()),
        Command::CatalogVerify { name } => commands::catalog_verify(name.as_deref()),
        Command::InversionDemo(demo) => inversion::run(demo, &config.tolerances, config.seed),
    };
    match result {
        Ok(Output::Raw(text)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            EXIT_PASS
        }
        Ok(Output::Report(report)) => {
            if report.write_to(config.format, out).is_err() {
                return EXIT_INPUT;
            }
            if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
