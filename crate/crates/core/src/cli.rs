//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{
    self, bergman_metric_at, gn_membership, max_root_modulus, parse_complex, parse_point,
    pullback_residual, CurveSpec, CurveTarget, Grid, ResidualMethod,
};
use crate::kernel::{self, rationalize_kernel, KernelFormula, VerifyConfig};
use crate::polyalg::Precision;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gnkernel",
    version,
    about = "Bergman kernel of the symmetrized polydisc"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Symbolic,
    Fd,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the rational kernel and write it as JSON.
    Formula {
        #[arg(long)]
        n: usize,
        /// Output file [default: kernel_n<N>.json]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the formula with direct evaluation on random samples.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0.8)]
        radius: f64,
        #[arg(long, default_value_t = 0.05)]
        separation: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Load the formula from a file instead of building it.
        #[arg(long)]
        formula: Option<PathBuf>,
        /// Arithmetic for both sides [default: double for n <= 3, extended for n = 4]
        #[arg(long, value_enum)]
        precision: Option<PrecisionArg>,
    },
    /// Evaluate K(xi, eta).
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long)]
        formula: Option<PathBuf>,
    },
    /// Print the Bergman metric at xi.
    Metric {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        formula: Option<PathBuf>,
    },
    /// Isometry residual of F: D -> C^m against G: D -> G_n.
    Residual {
        #[arg(long)]
        n: usize,
        #[arg(long = "F", allow_hyphen_values = true)]
        f: String,
        #[arg(long = "G", allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 0.4)]
        radius: f64,
        #[arg(long, default_value_t = Grid::DEFAULT_POINTS_PER_AXIS)]
        points: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Symbolic)]
        method: MethodArg,
        /// CSV file for the residual field.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        formula: Option<PathBuf>,
    },
    /// Test whether xi lies in G_n.
    Membership {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value_t = geometry::MEMBERSHIP_TOL)]
        tol: f64,
    },
    /// Log-kernel jet d^delta/dwbar^delta log K(G(z), G(w)) at w = 0.
    Jet {
        #[arg(long)]
        n: usize,
        #[arg(long = "G", allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 1)]
        delta: usize,
        #[arg(long)]
        formula: Option<PathBuf>,
    },
}

/// Real number with 15 significant digits, in the shortest form that
/// round-trips those digits.
pub fn format_real(x: f64) -> String {
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    format!("{rounded:?}")
}

/// `a+bi` with 15 significant digits per part; purely real values print as reals.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return format_real(z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_real(z.re), sign, format_real(z.im.abs()))
}

fn load_formula(n: usize, path: &Option<PathBuf>) -> Result<KernelFormula> {
    match path {
        Some(p) => {
            let f = KernelFormula::read_file(p)?;
            if f.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} holds n = {}, expected {n}",
                    p.display(),
                    f.n()
                )));
            }
            Ok(f)
        }
        None => rationalize_kernel(n),
    }
}

fn check_point_len(p: &[Complex64], n: usize) -> Result<()> {
    if p.len() == n {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: n,
            got: p.len(),
        })
    }
}

fn max_degree(p: &crate::polyalg::Polynomial, vars: std::ops::Range<usize>) -> u32 {
    p.terms()
        .map(|(m, _)| m.exponents()[vars.clone()].iter().sum::<u32>())
        .max()
        .unwrap_or(0)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    match cmd {
        Command::Formula { n, out: path } => {
            let f = rationalize_kernel(n)?;
            let path = path.unwrap_or_else(|| PathBuf::from(format!("kernel_n{n}.json")));
            f.write_file(&path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            writeln!(out, "wrote {}", path.display()).map_err(io)?;
            writeln!(out, "n={n} pi_power={}", f.pi_power()).map_err(io)?;
            for (name, p) in [("H1", f.h1()), ("H2", f.h2())] {
                writeln!(
                    out,
                    "{name}: terms={} total_degree={} degree_xi={} degree_etab={}",
                    p.num_terms(),
                    p.total_degree(),
                    max_degree(p, 0..n),
                    max_degree(p, n..2 * n)
                )
                .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            n,
            seed,
            samples,
            radius,
            separation,
            tol,
            formula,
            precision,
        } => {
            let precision = match precision {
                Some(p) => p.into(),
                None if n >= 4 => Precision::Extended,
                None => Precision::Double,
            };
            let config = VerifyConfig {
                n,
                seed,
                samples,
                radius,
                separation,
                tolerance: tol,
                precision,
            };
            config.validate()?;
            let f = load_formula(n, &formula)?;
            let report = kernel::cross_validate(&f, &config)?;
            writeln!(out, "{report}").map_err(io)?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Eval {
            n,
            xi,
            eta,
            formula,
        } => {
            let (xi, eta) = (parse_point(&xi)?, parse_point(&eta)?);
            check_point_len(&xi, n)?;
            check_point_len(&eta, n)?;
            let f = load_formula(n, &formula)?;
            let v = f.eval_strict(&xi, &eta)?;
            writeln!(out, "{}", format_complex(v)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Metric { n, xi, formula } => {
            let xi = parse_point(&xi)?;
            check_point_len(&xi, n)?;
            let f = load_formula(n, &formula)?;
            let g = bergman_metric_at(&f, &xi)?;
            for row in g.rows() {
                let cells: Vec<String> = row.into_iter().map(format_complex).collect();
                writeln!(out, "[{}]", cells.join(", ")).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Residual {
            n,
            f: fspec,
            g: gspec,
            radius,
            points,
            method,
            out: path,
            formula,
        } => {
            let fc = CurveSpec::parse_euclidean(&fspec)?;
            let gc = CurveSpec::parse(&gspec, CurveTarget::Symmetrized(n))?;
            let f = load_formula(n, &formula)?;
            let method = match method {
                MethodArg::Symbolic => ResidualMethod::Symbolic,
                MethodArg::Fd => ResidualMethod::FiniteDifference,
            };
            let field = pullback_residual(
                &fc,
                &gc,
                &f,
                &Grid {
                    radius,
                    points_per_axis: points,
                },
                method,
            )?;
            if let Some(p) = path {
                std::fs::write(&p, field.to_csv())
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            }
            writeln!(out, "{}", field.summary_json()).map_err(io)?;
            writeln!(out, "sup-norm: {}", format_real(field.sup_norm())).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Membership { xi, tol } => {
            let xi = parse_point(&xi)?;
            let inside = gn_membership(&xi, tol);
            writeln!(out, "{inside}").map_err(io)?;
            writeln!(
                out,
                "max root modulus: {}",
                format_real(max_root_modulus(&xi))
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Jet {
            n,
            g,
            z,
            delta,
            formula,
        } => {
            let gc = CurveSpec::parse(&g, CurveTarget::Symmetrized(n))?;
            let z = parse_complex(&z)?;
            let f = load_formula(n, &formula)?;
            let v = kernel::log_kernel_jet(&f, &gc, z, delta)?;
            writeln!(out, "{}", format_complex(v)).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}
