//! `curvejac` command line: fixture catalog, Jacobians, verification of the
//! special-quintic construction, through-curve systems and sampling runs.
//!
//! Exit codes: 0 success, 2 input error, 3 dimension error, 4 empty system.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod input;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DIMENSION: u8 = 3;
pub const EXIT_EMPTY: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "curvejac",
    version,
    about = "Exact Jacobians of incidence schemes of rational curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for point draws and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative singular-value threshold for numeric ranks.
    #[arg(long = "tol", global = true, default_value = "1e-8")]
    pub tolerance: String,
    /// Digits for root finding and complex rendering (at most 15).
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: u32,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormArg {
    Coeff,
    Eval,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a shipped fixture bundle.
    Fixture { name: String },
    /// Jacobian of the incidence equations at a curve.
    Jacobian {
        /// Problem JSON {n, d?, e, f} (path or "-").
        #[arg(long)]
        problem: Option<String>,
        /// Curve JSON {n, d, components} (path or "-").
        #[arg(long)]
        curve: Option<String>,
        /// Use f0 and c0 of a shipped fixture.
        #[arg(long, conflicts_with_all = ["problem", "curve"])]
        fixture: Option<String>,
        #[arg(long, value_enum, default_value_t = FormArg::Coeff)]
        form: FormArg,
        /// Comma-separated evaluation points: rationals "p/q" or complex "a+bi".
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Run the ten verification checks on a fixture.
    Verify {
        /// Fixture JSON (path or "-").
        input: Option<String>,
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
    },
    /// Basis of the degree-e forms containing a curve.
    Through {
        /// Curve JSON (path or "-").
        input: Option<String>,
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
        #[arg(long)]
        degree: usize,
    },
    /// Rank the Jacobian at the curve for random members of the through-curve system.
    Sample {
        /// Curve JSON (path or "-").
        input: Option<String>,
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        count: usize,
    },
}

/// A failed run: exit code and a message for standard error.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn dimension(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DIMENSION,
            message: message.into(),
        }
    }
}

impl From<curvejac::Error> for CliError {
    fn from(e: curvejac::Error) -> Self {
        use curvejac::Error as E;
        let code = match e {
            E::Dimension(_) | E::NotSquare { .. } | E::PointCount { .. } => EXIT_DIMENSION,
            E::EmptyBasis => EXIT_EMPTY,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Effective configuration, embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    pub output: Option<String>,
    pub seed: u64,
    pub tolerance: String,
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<FormArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<String>,
    pub format: Format,
}

/// Parses `args`, runs the command and writes its report; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match commands::execute(&cli, stdin) {
        Ok((report, code)) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, report.as_bytes()).map_err(|e| format!("cannot write {path}: {e}")),
                None => stdout.write_all(report.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
