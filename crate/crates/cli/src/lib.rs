//! The `restrikt` command-line tool: runs the exact invariant pipeline and
//! the numerical checks, and renders the results as JSON or CSV.
//!
//! [`run`] does all the work and returns the rendered output with its exit
//! code, so the binary is a thin wrapper around it.

pub mod args;
pub mod render;
pub mod verify;

use std::fmt;

use serde::Serialize;

use restrikt_core::analysis::{analyze, Analysis};
use restrikt_core::corpus;
use restrikt_core::poly::normalize_gradient;
use restrikt_core::{parse_polynomial, Polynomial, Rational, UnivariatePolynomial};

pub use args::Cli;
use args::{Check, Command, OutputArgs, PhaseArgs};

/// A failure reported as `{"error": {"kind", "message"}}` with exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            kind: kind.into(),
            message: message.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Inner<'a> {
            kind: &'a str,
            message: &'a str,
        }
        #[derive(Serialize)]
        struct Outer<'a> {
            error: Inner<'a>,
        }
        let body = Outer {
            error: Inner {
                kind: &self.kind,
                message: &self.message,
            },
        };
        serde_json::to_string_pretty(&body).expect("serializable") + "\n"
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

pub const EXIT_VALIDATION: i32 = 2;

/// Rendered output of a successful command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit_code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl OutputArgs {
    pub fn format(&self) -> Format {
        if self.csv {
            Format::Csv
        } else {
            Format::Json
        }
    }
}

/// A corpus name (case-insensitive) or a polynomial.
pub fn resolve_phase(args: &PhaseArgs) -> Result<Polynomial, CliError> {
    let p = match corpus::find(&args.phi.to_lowercase()) {
        Some(entry) => entry.polynomial(),
        None => parse_polynomial(&args.phi).map_err(|e| CliError::new("ParseError", e))?,
    };
    Ok(if args.normalize_gradient {
        normalize_gradient(&p)
    } else {
        p
    })
}

pub fn run_analysis(args: &PhaseArgs) -> Result<Analysis, CliError> {
    let p = resolve_phase(args)?;
    analyze(&p).map_err(|e| CliError::new(e.kind(), e))
}

/// A polynomial in `x1` alone, as `f64` coefficients.
pub fn parse_univariate(text: &str) -> Result<UnivariatePolynomial<f64>, CliError> {
    let p = parse_polynomial(text).map_err(|e| CliError::new("ParseError", e))?;
    if p.degree_in_x2().is_some_and(|d| d > 0) {
        return Err(CliError::new(
            "NotUnivariate",
            format!("`{text}` depends on x2"),
        ));
    }
    let degree = p.degree_in_x1().unwrap_or(0) as usize;
    let coeffs = (0..=degree)
        .map(|k| restrikt_core::rational::to_f64(&p.coeff(k as u32, 0)))
        .collect();
    Ok(UnivariatePolynomial::new(coeffs))
}

pub(crate) fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError>
where
    T::Err: fmt::Display,
{
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|e| CliError::new("InvalidArgument", format!("{what}: {e}")))
        })
        .collect()
}

pub(crate) fn parse_rational_pair(text: &str) -> Result<(Rational, Rational), CliError> {
    let v: Vec<Rational> = parse_list(text, "exponent pair")?;
    match <[Rational; 2]>::try_from(v) {
        Ok([x, y]) => Ok((x, y)),
        Err(_) => Err(CliError::new(
            "InvalidArgument",
            "expected two comma-separated rationals",
        )),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze(a) => {
            let analysis = run_analysis(&a.phase)?;
            Ok(Outcome {
                body: render::analysis(&analysis, a.output.format()),
                exit_code: 0,
            })
        }
        Command::Polygon(a) => {
            let analysis = run_analysis(&a.phase)?;
            Ok(Outcome {
                body: render::polygon(&analysis, a.output.format())?,
                exit_code: 0,
            })
        }
        Command::Kfunction(a) => {
            let analysis = run_analysis(&a.phase)?;
            Ok(Outcome {
                body: render::kfunction(&analysis, a.output.format())?,
                exit_code: 0,
            })
        }
        Command::Polyhedron(a) => {
            let analysis = run_analysis(&a.phase)?;
            Ok(Outcome {
                body: render::polyhedron(&analysis, a.output.format()),
                exit_code: 0,
            })
        }
        Command::Verify { check } => verify::run(check),
    }
}

/// Where the output of `command` should be written.
pub fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Analyze(a)
        | Command::Polygon(a)
        | Command::Kfunction(a)
        | Command::Polyhedron(a) => &a.output,
        Command::Verify { check } => match check {
            Check::Decay { output, .. }
            | Check::Vdc { output, .. }
            | Check::Airy { output, .. }
            | Check::Knapp { output, .. } => output,
        },
    }
}

/// `RESTRIKT_THREADS` if set and valid, else `flag`.
pub fn thread_count(flag: Option<usize>) -> Option<usize> {
    std::env::var("RESTRIKT_THREADS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .or(flag)
}
