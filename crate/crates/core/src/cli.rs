//! Command-line front end. Exit codes: 0 success, 1 computation or
//! verification failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::basis::{Family, FamilySpec};
use crate::closed_forms::{figure_preset, RhoTable, FIGURE_NAMES};
use crate::convmat::{build_matrix, convolve_series, SeriesCoeffs};
use crate::error::{Error, Result};
use crate::scalars::{parse_rational, Backend, Field, Float, Rational};
use crate::verify::{self, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "polyconv",
    version,
    about = "Convolution coefficients of classical orthogonal polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of ρ_{j,n}^m for fixed m over 0 <= j <= jmax, 0 <= n <= nmax.
    Coeffs {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Convolution matrix R of f (a series file, or P_m via --m) with N+1 columns.
    Matrix {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, conflicts_with = "f")]
        m: Option<usize>,
        #[arg(long, value_name = "FILE")]
        f: Option<PathBuf>,
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coefficients of f * g from two series files.
    Convolve {
        #[arg(long, value_name = "FILE")]
        f: PathBuf,
        #[arg(long, value_name = "FILE")]
        g: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Magnitude grid log10|ρ_{j,n}^m| with exact zeros as -inf.
    Figure {
        /// One of the built-in parameter sets; family flags are ignored when given.
        #[arg(long)]
        preset: Option<String>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 15)]
        m: usize,
        #[arg(long, default_value_t = 66)]
        jmax: usize,
        #[arg(long, default_value_t = 66)]
        nmax: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Closed forms against the oracle, zero bands and symmetry scalings.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Domain offset of a generic monic basis.
    #[arg(long, allow_hyphen_values = true)]
    pub offset: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// rational, float or float:<bits>.
    #[arg(long, default_value = "rational")]
    pub backend: String,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Full grid (or dense matrix).
    Csv,
    /// Nonzero entries only, as j,n,value.
    Triplet,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl FamilyArgs {
    fn is_empty(&self) -> bool {
        self.family.is_none()
    }

    fn spec(&self) -> std::result::Result<FamilySpec, Failure> {
        let name = self.family.as_deref().ok_or_else(|| usage("--family is required"))?;
        let family = Family::parse(name).map_err(|e| usage(e.to_string()))?;
        let num = |flag: &str, v: &Option<String>| -> std::result::Result<Option<Rational>, Failure> {
            v.as_deref()
                .map(|s| parse_rational(s).map_err(|e| usage(format!("--{flag}: {e}"))))
                .transpose()
        };
        let need = |flag: &str, v: Option<Rational>| v.ok_or_else(|| usage(format!("--{flag} is required for {name}")));
        let alpha = num("alpha", &self.alpha)?;
        let beta = num("beta", &self.beta)?;
        let lambda = num("lambda", &self.lambda)?;
        let offset = num("offset", &self.offset)?;
        let spec = match family {
            Family::Jacobi => FamilySpec::jacobi(need("alpha", alpha)?, need("beta", beta)?),
            Family::SymmetricJacobi => FamilySpec::symmetric_jacobi(need("alpha", alpha)?),
            Family::Gegenbauer => FamilySpec::gegenbauer(need("lambda", lambda)?),
            Family::Legendre => Ok(FamilySpec::legendre()),
            Family::Chebyshev => Ok(FamilySpec::chebyshev()),
            Family::Laguerre => FamilySpec::laguerre(alpha.unwrap_or_default()),
            Family::GenericMonic => Ok(FamilySpec::generic_monic(offset.unwrap_or_default())),
        };
        spec.map_err(|e| usage(e.to_string()))
    }
}

impl CommonArgs {
    fn backend(&self) -> std::result::Result<Backend, Failure> {
        self.backend.parse().map_err(|e: Error| usage(e.to_string()))
    }

    fn emit(&self, text: &str, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| Failure::Compute(format!("writing {}: {e}", path.display())))
            }
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Compute(format!("writing output: {e}"))),
        }
    }
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Compute(format!("reading {}: {e}", path.display())))
}

/// Runs the backend-generic body `$body` with `F` bound to the scalar type.
macro_rules! with_backend {
    ($backend:expr, |$ctx:ident: $f:ident| $body:expr) => {
        match $backend {
            Backend::Rational => {
                type $f = Rational;
                let $ctx = &();
                $body
            }
            Backend::Float { precision } => {
                type $f = Float;
                let $ctx = &precision;
                $body
            }
        }
    };
}

fn table_text<F: Field>(table: &RhoTable<F>, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Triplet => {
            let mut out = String::from("j,n,value\n");
            for (j, n, v) in table.cells().filter(|(_, _, v)| !v.is_zero()) {
                out.push_str(&format!("{j},{n},{v}\n"));
            }
            out
        }
    }
}

/// Magnitudes from the requested backend; the zero pattern always comes
/// from exact arithmetic so rounding cannot hide or invent a zero.
fn figure_text<F: Field>(spec: &FamilySpec, m: usize, jmax: usize, nmax: usize, ctx: &F::Ctx) -> Result<String> {
    let exact = RhoTable::<Rational>::build(spec, m, jmax, nmax, &())?;
    if F::BACKEND == <Rational as Field>::BACKEND {
        return Ok(exact.magnitude_csv());
    }
    let approx = RhoTable::<F>::build(spec, m, jmax, nmax, ctx)?;
    let mut out = String::from("j,n,log10abs\n");
    for ((j, n, e), (_, _, v)) in exact.cells().zip(approx.cells()) {
        if Field::is_zero(e) {
            out.push_str(&format!("{j},{n},-inf\n"));
        } else {
            out.push_str(&format!("{j},{n},{:.6}\n", v.log10_abs()));
        }
    }
    Ok(out)
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Coeffs {
            family,
            m,
            jmax,
            nmax,
            common,
        } => {
            let spec = family.spec()?;
            let jmax = jmax.unwrap_or(m + nmax + 1);
            let text = with_backend!(common.backend()?, |ctx: F| {
                table_text(&RhoTable::<F>::build(&spec, m, jmax, nmax, ctx)?, common.format)
            });
            common.emit(&text, stdout)
        }
        Command::Matrix {
            family,
            m,
            f,
            n,
            common,
        } => {
            let backend = common.backend()?;
            let text = with_backend!(backend, |ctx: F| {
                let series = match (&f, m) {
                    (Some(path), _) => {
                        let s = SeriesCoeffs::<F>::parse_file(&read(path)?, ctx)?;
                        if !family.is_empty() && family.spec()? != *s.family() {
                            return Err(
                                Error::FamilyMismatch(family.spec()?.to_string(), s.family().to_string()).into(),
                            );
                        }
                        s
                    }
                    (None, Some(m)) => SeriesCoeffs::<F>::unit(family.spec()?, m, ctx),
                    (None, None) => return Err(usage("matrix needs --m or --f")),
                };
                let mat = build_matrix(&series, n + 1)?;
                match common.format {
                    Format::Csv => mat.to_dense_csv(),
                    Format::Triplet => mat.to_triplet_csv(),
                }
            });
            common.emit(&text, stdout)
        }
        Command::Convolve { f, g, common } => {
            let (ftext, gtext) = (read(&f)?, read(&g)?);
            let text = with_backend!(common.backend()?, |ctx: F| {
                let fs = SeriesCoeffs::<F>::parse_file(&ftext, ctx)?;
                let gs = SeriesCoeffs::<F>::parse_file(&gtext, ctx)?;
                convolve_series(&fs, &gs)?.to_file_string()
            });
            common.emit(&text, stdout)
        }
        Command::Figure {
            preset,
            family,
            m,
            jmax,
            nmax,
            common,
        } => {
            let (spec, m, jmax, nmax) = match preset {
                Some(name) => {
                    let p = figure_preset(&name).ok_or_else(|| {
                        usage(format!(
                            "unknown preset {name:?}; choose one of {}",
                            FIGURE_NAMES.join(", ")
                        ))
                    })?;
                    (p.family, p.m, p.jmax, p.nmax)
                }
                None => (family.spec()?, m, jmax, nmax),
            };
            let text = with_backend!(common.backend()?, |ctx: F| figure_text::<F>(&spec, m, jmax, nmax, ctx)?);
            common.emit(&text, stdout)
        }
        Command::Verify {
            family,
            max_degree,
            common,
            inject_fault,
        } => {
            let families = if family.is_empty() {
                verify::default_families()
            } else {
                vec![family.spec()?]
            };
            let float_precision = match common.backend()? {
                Backend::Rational => None,
                Backend::Float { precision } => Some(precision),
            };
            let report = verify::run(&VerifyConfig {
                families,
                max_degree,
                float_precision,
                inject_fault,
            })?;
            common.emit(&report.render(), stdout)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Compute("verification failed".into()))
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}
