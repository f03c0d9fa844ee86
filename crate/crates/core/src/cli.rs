//! The `powersum` command line.
//!
//! Exit statuses: 0 success, 1 domain error, 2 convergence (or verification)
//! failure, 64 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bernoulli::{bernoulli_number, zeta_even_exact, zeta_neg_int, Convention};
use crate::error::Error;
use crate::hurwitz::{hurwitz_zeta_hermite, riemann_zeta_series, HurwitzArgs};
use crate::powersum::{powersum_polynomial, Method, PowerSumQuery};
use crate::quadrature::QuadratureConfig;
use crate::verify::cross_validate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "powersum", version, about = "Exact power sums, Bernoulli numbers and Hurwitz zeta values")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print S_p(n) = 1^p + ... + n^p as an exact integer.
    #[command(allow_negative_numbers = true)]
    Sum {
        p: u32,
        n: u64,
        /// bernoulli-, bernoulli+, alt, parity, poly, recursive or brute.
        #[arg(long, default_value = "bernoulli-", value_parser = str::parse::<Method>)]
        method: Method,
        #[arg(long, default_value = "minus", value_parser = str::parse::<Convention>)]
        convention: Convention,
    },
    /// Print the Bernoulli number B_k as an exact fraction.
    #[command(allow_negative_numbers = true)]
    Bernoulli {
        k: usize,
        #[arg(long, default_value = "minus", value_parser = str::parse::<Convention>)]
        convention: Convention,
    },
    /// Print the coefficients of S_p(n) as a polynomial in n, lowest degree first.
    #[command(allow_negative_numbers = true)]
    Poly {
        p: u32,
        #[arg(long, default_value = "minus", value_parser = str::parse::<Convention>)]
        convention: Convention,
    },
    /// Print the Riemann zeta value ζ(s).
    #[command(allow_negative_numbers = true)]
    Zeta {
        s: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Evaluate ζ(s, z) through the Hermite integral.
    #[command(allow_negative_numbers = true)]
    Hurwitz {
        s: f64,
        z: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Cross-validate every evaluation path.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long, default_value_t = 8)]
        pmax: u32,
        #[arg(long, default_value_t = 50)]
        nmax: u64,
    },
}

/// Outcome of a subcommand: either a document to print, or a failed
/// verification that is still printed but exits non-zero.
struct Output {
    plain: String,
    json: serde_json::Value,
    status: i32,
}

impl Output {
    fn ok(plain: impl Into<String>, json: serde_json::Value) -> Self {
        Output {
            plain: plain.into(),
            json,
            status: EXIT_OK,
        }
    }
}

fn exit_status(err: &Error) -> i32 {
    match err {
        Error::Domain(_) => EXIT_DOMAIN,
        Error::Convergence { .. } => EXIT_CONVERGENCE,
        // Integrality failures are bugs; report them as a numeric failure.
        Error::NonIntegral { .. } => EXIT_CONVERGENCE,
    }
}

fn check_tol(tol: f64) -> Result<(), Error> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance must be positive, got {tol}")))
    }
}

fn execute(command: Command) -> Result<Output, Error> {
    match command {
        Command::Sum {
            p,
            n,
            method,
            convention,
        } => {
            let value = method.evaluate(PowerSumQuery::new(p, n), convention)?;
            let digits = value.to_string();
            Ok(Output::ok(
                digits.clone(),
                json!({
                    "p": p,
                    "n": n,
                    "method": method.as_str(),
                    "convention": convention.as_str(),
                    "value": digits,
                }),
            ))
        }
        Command::Bernoulli { k, convention } => {
            let b = bernoulli_number(k, convention).to_string();
            Ok(Output::ok(
                b.clone(),
                json!({ "k": k, "convention": convention.as_str(), "value": b }),
            ))
        }
        Command::Poly { p, convention } => {
            let poly = powersum_polynomial(p, convention);
            let coefficients: Vec<String> =
                poly.coefficients.iter().map(|c| c.to_string()).collect();
            Ok(Output::ok(
                poly.to_string(),
                json!({ "p": p, "coefficients": coefficients }),
            ))
        }
        Command::Zeta { s, tol } => zeta(s, tol),
        Command::Hurwitz { s, z, tol } => {
            check_tol(tol)?;
            let args = HurwitzArgs::new(s, z)?;
            let est = hurwitz_zeta_hermite(&args, &QuadratureConfig::default().with_rel_tol(tol))?;
            Ok(Output::ok(
                format!("{} +/- {:e}", est.value, est.abs_error),
                json!({ "s": s, "z": z, "value": est.value, "abs_error": est.abs_error }),
            ))
        }
        Command::Verify { pmax, nmax } => {
            let report = cross_validate(pmax, nmax, &QuadratureConfig::default())?;
            let mut plain = format!(
                "grid: p {}..={}, n {}..={}\npaths: {}\nmismatches: {}\nnumeric max relative error: {:e} (tolerance {:e})\n",
                report.p_range.0,
                report.p_range.1,
                report.n_range.0,
                report.n_range.1,
                report.paths_compared.join(", "),
                report.mismatches.len(),
                report.numeric_max_rel_err,
                report.numeric_tolerance,
            );
            for m in &report.mismatches {
                plain.push_str(&format!(
                    "  p={} n={} {}: expected {}, got {}\n",
                    m.p, m.n, m.path, m.expected, m.got
                ));
            }
            plain.push_str(if report.all_passed { "result: PASS" } else { "result: FAIL" });
            Ok(Output {
                plain,
                json: report.to_json(),
                status: if report.all_passed { EXIT_OK } else { EXIT_CONVERGENCE },
            })
        }
    }
}

/// Exact output for integers `s <= 0` and even `s >= 2`, numeric otherwise.
fn zeta(s: f64, tol: f64) -> Result<Output, Error> {
    check_tol(tol)?;
    if !s.is_finite() {
        return Err(Error::domain("s must be finite"));
    }
    if s == 1.0 {
        return Err(Error::domain("ζ(s) has a pole at s = 1"));
    }
    let integral = s.fract() == 0.0 && s.abs() < 1e9;
    if integral && s <= 0.0 {
        let exact = zeta_neg_int((-s) as u32);
        let text = exact.to_string();
        return Ok(Output::ok(
            text.clone(),
            json!({ "s": s, "kind": "rational", "exact": text, "value": crate::hurwitz::to_f64(&exact) }),
        ));
    }
    if integral && s as u64 % 2 == 0 {
        let exact = zeta_even_exact(s as u32)?;
        let text = exact.to_string();
        return Ok(Output::ok(
            text.clone(),
            json!({ "s": s, "kind": "pi_power", "exact": text, "value": exact.to_f64() }),
        ));
    }
    let (value, abs_error) = if s > 1.0 {
        (riemann_zeta_series(s, tol)?, tol)
    } else {
        let args = HurwitzArgs::new(s, 1.0)?;
        let est = hurwitz_zeta_hermite(&args, &QuadratureConfig::default().with_rel_tol(tol))?;
        (est.value, est.abs_error)
    };
    Ok(Output::ok(
        value.to_string(),
        json!({ "s": s, "kind": "numeric", "value": value, "abs_error": abs_error }),
    ))
}

/// Runs the command line `argv` (including the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                ErrorKind::ValueValidation | ErrorKind::InvalidValue => {
                    let rendered = e.render().to_string();
                    let line = rendered.lines().next().unwrap_or("error: invalid value");
                    let _ = writeln!(err, "{line}");
                    EXIT_DOMAIN
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let format = cli.format;
    match execute(cli.command) {
        Ok(output) => {
            let written = match format {
                OutputFormat::Plain => writeln!(out, "{}", output.plain),
                OutputFormat::Json => writeln!(out, "{}", output.json),
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            output.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_status(&e)
        }
    }
}
