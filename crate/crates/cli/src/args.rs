use std::path::PathBuf;

use cfrac_core::coeffspec::Preset;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "cfrac", version, about = "Continued fractions from three-term recurrences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the continued fraction once.
    Eval(EvalArgs),
    /// Print convergents next to the truncated series ratio, one row per depth.
    Table,
    /// Run the seeded randomized verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value_t = Method::Backward)]
    pub method: Method,
    /// Iteration bound for the Lentz method.
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Trials per randomized suite (default: 200 for eq4, 100 for phi and bridge).
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Realization::Float)]
    pub realization: Realization,
    /// Mantissa bits for the float and complex realizations.
    #[arg(long, global = true, default_value_t = cfrac_core::scalar::DEFAULT_PRECISION_BITS)]
    pub precision_bits: usize,
    /// Truncation degree for the series realization.
    #[arg(long, global = true, default_value_t = 8)]
    pub series_degree: usize,
    /// Variable name for the series realization.
    #[arg(long, global = true, default_value = "z")]
    pub series_var: String,
    /// Truncation depth N.
    #[arg(long, global = true, default_value_t = 40)]
    pub depth: usize,
    /// Keep only the subset-sum layers up to this size in the series ratio.
    #[arg(long, global = true)]
    pub phi_depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 1e-30)]
    pub eps: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true)]
    pub preset: Option<Preset>,
    /// Rule for a_m, an expression in m and the parameters.
    #[arg(long = "a", global = true, value_name = "EXPR", allow_hyphen_values = true)]
    pub a_rule: Option<String>,
    /// Rule for b_m, an expression in m and the parameters.
    #[arg(long = "b", global = true, value_name = "EXPR", allow_hyphen_values = true)]
    pub b_rule: Option<String>,
    /// Parameter binding, repeatable.
    #[arg(long = "param", global = true, value_name = "NAME=VALUE", value_parser = parse_binding, allow_hyphen_values = true)]
    pub params: Vec<(String, String)>,
    #[arg(long, global = true, value_name = "VALUE", allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, global = true, value_name = "VALUE", allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, global = true, value_name = "VALUE", allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Override for a_0.
    #[arg(long, global = true, value_name = "VALUE", allow_hyphen_values = true)]
    pub a0: Option<String>,
    /// Override for b_0.
    #[arg(long, global = true, value_name = "VALUE", allow_hyphen_values = true)]
    pub b0: Option<String>,
    /// File with one "a_m b_m" pair per line.
    #[arg(long, global = true, value_name = "PATH")]
    pub coeff_file: Option<PathBuf>,
}

impl GlobalOpts {
    /// `--param` bindings followed by the `--q`, `--z`, `--c` shortcuts.
    pub fn bindings(&self) -> Vec<(String, String)> {
        let mut out = self.params.clone();
        for (name, value) in [("q", &self.q), ("z", &self.z), ("c", &self.c)] {
            if let Some(v) = value {
                out.retain(|(n, _)| n != name);
                out.push((name.to_string(), v.clone()));
            }
        }
        out
    }
}

fn parse_binding(text: &str) -> Result<(String, String), String> {
    let (name, value) = text.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got {text:?}"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return Err(format!("invalid parameter name {name:?}"));
    }
    Ok((name.to_string(), value.trim().to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realization {
    Rational,
    Float,
    Complex,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Backward,
    Lentz,
    Convergent,
    SeriesRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Eq4,
    Phi,
    Bridge,
    Apps,
    All,
}
