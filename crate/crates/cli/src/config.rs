use serde::Serialize;

use crate::args::{Cli, Command, Format, Method, Realization, Suite};
use crate::error::CliError;
use crate::source::Source;

/// Everything that determines a command's output, echoed in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub realization: Realization,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_var: Option<String>,
    pub depth: usize,
    pub phi_depth: Option<usize>,
    pub eps: f64,
    pub seed: u64,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    pub params: Vec<(String, String)>,
    pub a0: Option<String>,
    pub b0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let o = &cli.opts;
        if !(o.eps > 0.0 && o.eps.is_finite()) {
            return Err(CliError::Usage(format!("--eps must be a positive number, got {}", o.eps)));
        }
        let approx = matches!(o.realization, Realization::Float | Realization::Complex);
        if approx && o.precision_bits < 16 {
            return Err(CliError::Usage(format!("--precision-bits must be at least 16, got {}", o.precision_bits)));
        }
        let series = o.realization == Realization::Series;
        if series && !is_identifier(&o.series_var) {
            return Err(CliError::Usage(format!("--series-var must be an identifier, got {:?}", o.series_var)));
        }
        let mut config = RunConfig {
            command: "",
            realization: o.realization,
            precision_bits: approx.then_some(o.precision_bits),
            series_degree: series.then_some(o.series_degree),
            series_var: series.then(|| o.series_var.clone()),
            depth: o.depth,
            phi_depth: o.phi_depth,
            eps: o.eps,
            seed: o.seed,
            format: o.format,
            source: None,
            params: o.bindings(),
            a0: o.a0.clone(),
            b0: o.b0.clone(),
            method: None,
            max_iter: None,
            suite: None,
            trials: None,
        };
        match &cli.command {
            Command::Eval(e) => {
                config.command = "eval";
                config.method = Some(e.method);
                config.max_iter = Some(e.max_iter);
                config.source = Some(Source::from_opts(o)?);
            }
            Command::Table => {
                config.command = "table";
                config.source = Some(Source::from_opts(o)?);
            }
            Command::Verify(v) => {
                config.command = "verify";
                config.suite = Some(v.suite);
                config.trials = v.trials;
            }
        }
        Ok(config)
    }
}
