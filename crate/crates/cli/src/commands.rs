use cfrac_core::coeffspec::CoeffSeq;
use cfrac_core::contfrac::{convergents, eval_backward, eval_lentz, LentzError};
use cfrac_core::expansion::{series_ratio_approx, series_ratio_layered};
use cfrac_core::scalar::Field;
use cfrac_core::Error;
use serde::Serialize;

use crate::args::{EvalArgs, Format, GlobalOpts, Method};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output;

/// Marker printed for a value whose denominator vanished.
pub const AT_INFINITY: &str = "inf";
/// Marker printed for a difference involving [`AT_INFINITY`].
pub const UNDEFINED: &str = "nan";

#[derive(Debug, Serialize)]
struct EvalRecord {
    method: Method,
    value: String,
    depth: usize,
    /// Lentz iterations used, when the method iterates.
    iterations: Option<usize>,
    alternate: Method,
    /// `|value - alternate value|`, absent when the alternate method failed.
    residual: Option<String>,
}

#[derive(Debug, Serialize)]
struct EvalOutput<'a> {
    config: &'a RunConfig,
    record: EvalRecord,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub convergent: String,
    pub series_ratio: String,
    pub abs_diff: String,
}

#[derive(Debug, Serialize)]
struct TableOutput<'a> {
    config: &'a RunConfig,
    rows: Vec<TableRow>,
}

fn series_ratio<F: Field>(coeffs: &CoeffSeq<F>, n: usize, phi_depth: Option<usize>) -> cfrac_core::Result<F::Elem> {
    match phi_depth {
        Some(d) => series_ratio_layered(coeffs, n, d),
        None => series_ratio_approx(coeffs, n),
    }
}

fn evaluate<F: Field>(
    coeffs: &CoeffSeq<F>,
    method: Method,
    opts: &GlobalOpts,
    max_iter: usize,
) -> Result<(F::Elem, Option<usize>), CliError> {
    let depth = opts.depth;
    match method {
        Method::Backward => Ok((eval_backward(coeffs, depth)?, None)),
        Method::Lentz => match eval_lentz(coeffs, opts.eps, max_iter) {
            Ok(v) => Ok((v.value, Some(v.iterations))),
            Err(LentzError::NonConvergence { last, iterations }) => Err(CliError::Domain(format!(
                "Lentz iteration did not converge in {iterations} steps; last iterate {}",
                coeffs.field().render(&last)
            ))),
            Err(LentzError::ExactRealization(name)) => {
                Err(CliError::Usage(format!("the lentz method needs the float or complex realization, not {name}")))
            }
            Err(LentzError::Other(e)) => Err(e.into()),
        },
        Method::Convergent => {
            let last = convergents(coeffs, depth)?.pop().expect("depth + 1 convergents");
            let value = last
                .value
                .ok_or_else(|| CliError::Domain(format!("convergent {depth} is at infinity (Q_{depth} = 0)")))?;
            Ok((value, None))
        }
        Method::SeriesRatio => Ok((series_ratio(coeffs, depth + 2, opts.phi_depth)?, None)),
    }
}

fn alternate_for<F: Field>(field: &F, method: Method) -> Method {
    match method {
        Method::Backward if field.precision_bits().is_some() => Method::Lentz,
        Method::Backward | Method::SeriesRatio => Method::Convergent,
        Method::Lentz => Method::Backward,
        Method::Convergent => Method::SeriesRatio,
    }
}

pub fn eval<F: Field>(coeffs: &CoeffSeq<F>, opts: &GlobalOpts, args: &EvalArgs, config: &RunConfig) -> Result<String, CliError> {
    let f = coeffs.field();
    let (value, iterations) = evaluate(coeffs, args.method, opts, args.max_iter)?;
    let alternate = alternate_for(f, args.method);
    let residual = evaluate(coeffs, alternate, opts, args.max_iter)
        .ok()
        .map(|(other, _)| f.render_abs_diff(&value, &other));
    let record = EvalRecord {
        method: args.method,
        value: f.render(&value),
        depth: opts.depth,
        iterations,
        alternate,
        residual,
    };
    Ok(match opts.format {
        Format::Json => output::json(&EvalOutput { config, record }),
        Format::Csv => output::csv(
            &["method", "value", "depth", "iterations", "alternate", "residual"],
            &[vec![
                method_name(record.method).into(),
                record.value,
                record.depth.to_string(),
                record.iterations.map(|i| i.to_string()).unwrap_or_default(),
                method_name(record.alternate).into(),
                record.residual.unwrap_or_default(),
            ]],
        ),
    })
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Backward => "backward",
        Method::Lentz => "lentz",
        Method::Convergent => "convergent",
        Method::SeriesRatio => "series-ratio",
    }
}

pub fn table<F: Field>(coeffs: &CoeffSeq<F>, opts: &GlobalOpts, config: &RunConfig) -> Result<String, CliError> {
    let f = coeffs.field();
    let conv = convergents(coeffs, opts.depth)?;
    let mut rows = Vec::with_capacity(conv.len());
    for c in &conv {
        let ratio = match series_ratio(coeffs, c.index + 2, opts.phi_depth) {
            Ok(v) => Some(v),
            Err(Error::Degenerate { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let render = |v: &Option<F::Elem>| v.as_ref().map_or_else(|| AT_INFINITY.to_string(), |x| f.render(x));
        let abs_diff = match (&c.value, &ratio) {
            (Some(x), Some(y)) => f.render_abs_diff(x, y),
            _ => UNDEFINED.to_string(),
        };
        rows.push(TableRow { n: c.index, convergent: render(&c.value), series_ratio: render(&ratio), abs_diff });
    }
    Ok(match opts.format {
        Format::Json => output::json(&TableOutput { config, rows }),
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .into_iter()
                .map(|r| vec![r.n.to_string(), r.convergent, r.series_ratio, r.abs_diff])
                .collect();
            output::csv(&["n", "convergent", "series_ratio", "abs_diff"], &cells)
        }
    })
}
