use cfrac_core::coeffspec::{bind_params, build_coeff_seq, coeff_seq_from_list, parse_coeff_list, preset_coeffs, CoeffSeq};
use cfrac_core::scalar::Field;
use serde::Serialize;

use crate::args::GlobalOpts;
use crate::error::CliError;

/// Where the coefficients come from, as echoed in JSON output.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Source {
    Preset { name: String },
    Rules { a: String, b: String },
    File { path: String },
}

impl Source {
    pub fn from_opts(opts: &GlobalOpts) -> Result<Self, CliError> {
        let rules = opts.a_rule.is_some() || opts.b_rule.is_some();
        let given = [opts.preset.is_some(), rules, opts.coeff_file.is_some()];
        match given.iter().filter(|g| **g).count() {
            0 => return Err(CliError::Usage("give one of --preset, --a/--b, or --coeff-file".into())),
            1 => {}
            _ => return Err(CliError::Usage("--preset, --a/--b and --coeff-file are mutually exclusive".into())),
        }
        if let Some(p) = opts.preset {
            return Ok(Source::Preset { name: p.name().to_string() });
        }
        if let Some(path) = &opts.coeff_file {
            if !opts.bindings().is_empty() {
                return Err(CliError::Usage("parameters have no effect with --coeff-file".into()));
            }
            return Ok(Source::File { path: path.display().to_string() });
        }
        match (&opts.a_rule, &opts.b_rule) {
            (Some(a), Some(b)) => Ok(Source::Rules { a: a.clone(), b: b.clone() }),
            _ => Err(CliError::Usage("--a and --b must be given together".into())),
        }
    }
}

/// Parameter bindings, adding `var = var` for the series variable when the
/// field is formal and the variable is not bound explicitly.
pub fn bindings_for<F: Field>(field: &F, opts: &GlobalOpts) -> Vec<(String, String)> {
    let mut pairs = opts.bindings();
    if field.is_formal() && !pairs.iter().any(|(n, _)| n == &opts.series_var) {
        pairs.push((opts.series_var.clone(), opts.series_var.clone()));
    }
    pairs
}

fn parse_override<F: Field>(field: &F, name: &str, text: &Option<String>) -> Result<Option<F::Elem>, CliError> {
    text.as_deref()
        .map(|t| field.parse(t).map_err(|e| CliError::Usage(format!("--{name}: {e}"))))
        .transpose()
}

pub fn build_coeffs<F: Field>(field: F, opts: &GlobalOpts, source: &Source) -> Result<CoeffSeq<F>, CliError> {
    let a0 = parse_override(&field, "a0", &opts.a0)?;
    let b0 = parse_override(&field, "b0", &opts.b0)?;
    match source {
        Source::Preset { .. } => {
            let preset = opts.preset.expect("source says preset");
            let params = bind_params(&field, &bindings_for(&field, opts))?;
            Ok(preset_coeffs(field, preset, params)?.with_overrides(a0, b0))
        }
        Source::Rules { a, b } => {
            let params = bind_params(&field, &bindings_for(&field, opts))?;
            Ok(build_coeff_seq(field, a, b, params, a0, b0)?)
        }
        Source::File { path } => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let pairs = parse_coeff_list(&text)?;
            if pairs.is_empty() {
                return Err(CliError::Usage(format!("{path} holds no coefficients")));
            }
            Ok(coeff_seq_from_list(field, &pairs).with_overrides(a0, b0))
        }
    }
}
