//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilkit_core::{parse_rational, Q};

use crate::report::OutputFormat;
use crate::{AlgebraSource, Command, InversionDemo, RunConfig, Tolerances, QUAD_ORDER_ENV};

#[derive(Parser, Debug)]
#[command(name = "nilkit", version, about = "Exact and numeric checks for two-step nilpotent Lie algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    pub format: FormatArg,

    /// Seed for random sweeps.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Relative tolerance for recovered values in inversion-demo.
    #[arg(long, default_value_t = 1e-6, global = true)]
    pub tol_inversion: f64,

    /// Relative tolerance for the spread of the inversion constant.
    #[arg(long, default_value_t = 1e-5, global = true)]
    pub tol_kappa: f64,

    /// Relative tolerance for closed form against quadrature.
    #[arg(long, default_value_t = 1e-8, global = true)]
    pub tol_quadrature: f64,

    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// Algebra file, or `catalog:<name>`.
    #[arg(long)]
    pub algebra: String,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Validate an algebra and run every applicable structure check.
    Check(AlgebraArg),
    /// Print the Pfaffian polynomial and test P(ζ) ≠ 0 against rank of b.
    Pfaffian {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Random central parameters to test.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Check J, the A1 condition, derivations and invariance.
    Satake(AlgebraArg),
    /// Inertia of β_ζ and the cohomology degree.
    Signature {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Comma-separated rationals on the center, e.g. `1,0` or `-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
    },
    /// List, build and verify the built-in algebras.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Fourier inversion through orbit characters on a Heisenberg group.
    InversionDemo {
        /// Algebra file or catalog name; defaults to the Heisenberg algebra of `--d`.
        #[arg(long)]
        algebra: Option<String>,
        /// Half the dimension of v.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 200.0)]
        zeta_max: f64,
        /// Gauss–Hermite order for the quadrature cross-checks.
        #[arg(long, env = QUAD_ORDER_ENV, default_value_t = 64)]
        quad_order: usize,
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        functions: usize,
        /// Also write the CSV report to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// List shipped entries.
    List,
    /// Write an entry as an algebra file.
    Build {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify table rows.
    Verify {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
}

fn parse_zeta(s: &str) -> Result<Vec<Q>, String> {
    s.split(',').map(|p| parse_rational(p.trim())).collect()
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, String> {
        let command = match self.command {
            Cmd::Check(a) => Command::Check { algebra: AlgebraSource::parse(&a.algebra) },
            Cmd::Pfaffian { algebra, samples } => Command::Pfaffian { algebra: AlgebraSource::parse(&algebra.algebra), samples },
            Cmd::Satake(a) => Command::Satake { algebra: AlgebraSource::parse(&a.algebra) },
            Cmd::Signature { algebra, zeta } => Command::Signature {
                algebra: AlgebraSource::parse(&algebra.algebra),
                zeta: zeta.as_deref().map(parse_zeta).transpose().map_err(|e| format!("--zeta: {e}"))?,
            },
            Cmd::Catalog(CatalogCmd::List) => Command::CatalogList,
            Cmd::Catalog(CatalogCmd::Build { name, out }) => Command::CatalogBuild { name, out },
            Cmd::Catalog(CatalogCmd::Verify { name, all }) => {
                if name.is_none() && !all {
                    return Err("catalog verify needs a name or --all".into());
                }
                Command::CatalogVerify { name }
            }
            Cmd::InversionDemo { algebra, d, zeta_max, quad_order, points, functions, csv } => {
                Command::InversionDemo(InversionDemo {
                    algebra: algebra.as_deref().map(AlgebraSource::parse),
                    d,
                    zeta_max,
                    quad_order,
                    points,
                    functions,
                    csv,
                })
            }
        };
        Ok(RunConfig {
            command,
            format: match self.format {
                FormatArg::Text => OutputFormat::Text,
                FormatArg::Csv => OutputFormat::Csv,
            },
            tolerances: Tolerances {
                inversion_rel: self.tol_inversion,
                kappa_rel: self.tol_kappa,
                quadrature_rel: self.tol_quadrature,
            },
            seed: self.seed,
        })
    }
}

/// Parses a full argument list (program name first).
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| e.to_string())?.into_config()
}
