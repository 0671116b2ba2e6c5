//! The `cfrac` command line: evaluation, convergence tables and randomized
//! verification of continued fractions built from three-term recurrences.

pub mod args;
mod commands;
pub mod config;
mod error;
mod output;
mod source;
pub mod verify;

use cfrac_core::scalar::{ComplexField, Field, FloatField, RationalField, SeriesField};

pub use args::Cli;
pub use commands::{AT_INFINITY, UNDEFINED};
pub use config::RunConfig;
pub use error::CliError;

use args::{Command, Realization};

/// What a successful command prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

fn with_field<F: Field>(field: F, cli: &Cli, config: &RunConfig) -> Result<String, CliError> {
    let source = config.source.as_ref().expect("eval and table have a source");
    let coeffs = source::build_coeffs(field, &cli.opts, source)?;
    match &cli.command {
        Command::Eval(e) => commands::eval(&coeffs, &cli.opts, e, config),
        Command::Table => commands::table(&coeffs, &cli.opts, config),
        Command::Verify(_) => unreachable!("verify does not build coefficients"),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = RunConfig::from_cli(cli)?;
    let o = &cli.opts;
    if let Command::Verify(v) = &cli.command {
        let (stdout, passed) = verify::verify(o, v, &config)?;
        return Ok(Outcome { stdout, code: if passed { 0 } else { 1 } });
    }
    let stdout = match o.realization {
        Realization::Rational => with_field(RationalField, cli, &config)?,
        Realization::Float => with_field(FloatField::new(o.precision_bits), cli, &config)?,
        Realization::Complex => with_field(ComplexField::new(FloatField::new(o.precision_bits)), cli, &config)?,
        Realization::Series => with_field(SeriesField::new(&o.series_var, o.series_degree), cli, &config)?,
    };
    Ok(Outcome { stdout, code: 0 })
}
