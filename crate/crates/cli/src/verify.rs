//! Seeded randomized verification suites.
//!
//! Each suite derives one seed per trial from the run seed, so a failing
//! trial can be replayed from its reported seed alone. Trials run in
//! parallel and are reported in trial order.

use cfrac_core::applications::{app1_ratio, app3_ratio, rr_ratio, SeriesOptions};
use cfrac_core::coeffspec::{bind_params, preset_coeffs, CoeffSeq, Preset};
use cfrac_core::contfrac::{convergents, eval_backward};
use cfrac_core::expansion::{phi_dp, phi_enumerate, reconstruct, series_ratio_approx, GWeights};
use cfrac_core::recurrence::iterate;
use cfrac_core::scalar::{Field, FloatField, Rational, RationalField};
use cfrac_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Format, GlobalOpts, Suite, VerifyArgs};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output;

/// Residual bound for the application identity checks.
pub const APP_TOLERANCE: f64 = 1e-10;
const APP_DEPTH: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub trials: usize,
    pub status: &'static str,
    pub failures: Vec<Failure>,
    /// Per-check residuals, for suites that measure one.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<(String, String)>,
}

impl VerifyReport {
    fn new(suite: &'static str, trials: usize, failures: Vec<Failure>, residuals: Vec<(String, String)>) -> Self {
        let status = if failures.is_empty() { "pass" } else { "fail" };
        Self { suite, trials, status, failures, residuals }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Uniform rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(-9i64..=9);
    let d = rng.gen_range(1u64..=9);
    Rational::from_parts(n.into(), d.into())
}

fn random_nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if r != Rational::ZERO {
            return r;
        }
    }
}

/// Random coefficients of length `len`, with `b_m` resampled until nonzero.
pub fn random_coeffs(rng: &mut impl Rng, len: usize) -> CoeffSeq<RationalField> {
    let mut a = Vec::with_capacity(len);
    let mut b = Vec::with_capacity(len);
    for _ in 0..len {
        a.push(random_rational(rng));
        b.push(random_nonzero(rng));
    }
    CoeffSeq::from_vecs(RationalField, a, b)
}

fn render_list(xs: &[Rational]) -> String {
    let f = RationalField;
    let parts: Vec<String> = xs.iter().map(|x| f.render(x)).collect();
    format!("[{}]", parts.join(" "))
}

fn describe(c: &CoeffSeq<RationalField>, len: usize) -> String {
    let p = c.prefix(len - 1).expect("explicit coefficients");
    format!("a={} b={}", render_list(&p.a), render_list(&p.b))
}

fn suite_index(s: Suite) -> u64 {
    match s {
        Suite::Eq4 => 0,
        Suite::Phi => 1,
        Suite::Bridge => 2,
        Suite::Apps => 3,
        Suite::All => 4,
    }
}

/// Per-trial seeds for one suite; independent of which other suites run.
pub fn trial_seeds(seed: u64, suite: Suite, trials: usize) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    master.set_stream(suite_index(suite));
    (0..trials).map(|_| master.gen()).collect()
}

fn run_trials(
    seed: u64,
    suite: Suite,
    trials: usize,
    trial: impl Fn(&mut ChaCha8Rng) -> Option<(String, String, String)> + Sync,
) -> Vec<Failure> {
    let seeds = trial_seeds(seed, suite, trials);
    let results: Vec<Option<Failure>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            trial(&mut rng).map(|(inputs, expected, actual)| Failure { trial: i, seed: s, inputs, expected, actual })
        })
        .collect();
    results.into_iter().flatten().collect()
}

/// The subset-sum reconstruction against forward iteration, `2 <= n <= 30`.
pub fn eq4_trial(rng: &mut ChaCha8Rng) -> Option<(String, String, String)> {
    const LEN: usize = 31;
    let c = random_coeffs(rng, LEN);
    let (x0, x1) = (random_rational(rng), random_rational(rng));
    let f = RationalField;
    let inputs = || format!("{} x0={} x1={}", describe(&c, LEN), f.render(&x0), f.render(&x1));
    let s = match iterate(&c, x0.clone(), x1.clone(), LEN - 1) {
        Ok(s) => s,
        Err(e) => return Some((inputs(), "forward iteration".into(), e.to_string())),
    };
    for n in 2..LEN {
        match reconstruct(&c, &x0, &x1, n) {
            Ok(v) if v == s.values[n] => {}
            Ok(v) => return Some((format!("{} n={n}", inputs()), f.render(&s.values[n]), f.render(&v))),
            Err(e) => return Some((format!("{} n={n}", inputs()), f.render(&s.values[n]), e.to_string())),
        }
    }
    None
}

/// Subset-sum recurrence against enumeration on a random weight vector.
pub fn phi_trial(rng: &mut ChaCha8Rng) -> Option<(String, String, String)> {
    let start = rng.gen_range(1usize..=3);
    let size = rng.gen_range(0usize..=16);
    let end = start + size + 1;
    let g: Vec<Rational> = (0..end - 2).map(|_| random_rational(rng)).collect();
    let inputs = format!("g={} start={start} end={end}", render_list(&g));
    let g = GWeights::from_vec(g);
    let f = RationalField;
    match (phi_enumerate(&f, &g, start, end), phi_dp(&f, &g, start, end)) {
        (Ok(x), Ok(y)) if x == y => None,
        (x, y) => Some((inputs, show(&x), show(&y))),
    }
}

fn show(r: &cfrac_core::Result<Rational>) -> String {
    match r {
        Ok(v) => RationalField.render(v),
        Err(e) => e.to_string(),
    }
}

/// Series ratio at `m + 2` against the `m`-th convergent, `0 <= m <= 25`.
pub fn bridge_trial(rng: &mut ChaCha8Rng) -> Option<(String, String, String)> {
    const M: usize = 25;
    let c = random_coeffs(rng, M + 3);
    let conv = match convergents(&c, M) {
        Ok(c) => c,
        Err(e) => return Some((describe(&c, M + 3), "convergents".into(), e.to_string())),
    };
    for (m, cv) in conv.iter().enumerate() {
        let ratio = series_ratio_approx(&c, m + 2);
        let ok = match (&cv.value, &ratio) {
            (Some(v), Ok(s)) => v == s,
            (None, Err(Error::Degenerate { .. })) => true,
            _ => false,
        };
        if !ok {
            let expected = cv.value.as_ref().map_or_else(|| "inf".to_string(), |v| RationalField.render(v));
            return Some((format!("{} m={m}", describe(&c, M + 3)), expected, show(&ratio)));
        }
    }
    None
}

fn float_preset(f: FloatField, preset: Preset, params: &[(&str, &str)]) -> Result<CoeffSeq<FloatField>, Error> {
    let pairs: Vec<(String, String)> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    Ok(preset_coeffs(f, preset, bind_params(&f, &pairs)?)?)
}

/// One application identity check: label, fraction value, series value.
type AppCheck = (String, cfrac_core::Result<(f64, String)>);

fn app_check(
    f: FloatField,
    label: String,
    preset: Preset,
    params: &[(&str, &str)],
    series: impl FnOnce(&FloatField) -> cfrac_core::Result<cfrac_core::scalar::Float>,
) -> AppCheck {
    let run = || -> cfrac_core::Result<(f64, String)> {
        let c = float_preset(f, preset, params)?;
        let k = eval_backward(&c, APP_DEPTH)?;
        let s = series(&f)?;
        let d = f.abs(&f.sub(&k, &s));
        Ok((f.to_f64(&d), f.render(&d)))
    };
    (label, run())
}

/// The application identities at the fixed check points, in float.
pub fn app_checks(precision: usize) -> Vec<AppCheck> {
    let f = FloatField::new(precision);
    let opts = SeriesOptions::default();
    let p = |t: &str| f.parse(t).expect("literal");
    let mut checks = Vec::new();
    for (c, z) in [("1", "1/2"), ("2", "-3/10"), ("1/2", "1/4")] {
        checks.push(app_check(f, format!("app1 c={c} z={z}"), Preset::App1, &[("c", c), ("z", z)], |f| {
            app1_ratio(f, &p(c), &p(z), opts)
        }));
    }
    checks.push(app_check(f, "app2 q=1/5 z=1".into(), Preset::App2, &[("q", "1/5"), ("z", "1")], |f| {
        rr_ratio(f, &p("1/5"), &p("1"), opts)
    }));
    for preset in [Preset::App3Paper, Preset::App3Canonical] {
        checks.push(app_check(
            f,
            format!("{} q=2 z=1", preset.name()),
            preset,
            &[("q", "2"), ("z", "1"), ("c", "0")],
            |f| app3_ratio(f, &p("2"), &p("1"), opts),
        ));
    }
    checks
}

fn apps_report(precision: usize) -> VerifyReport {
    let checks = app_checks(precision);
    let trials = checks.len();
    let mut failures = Vec::new();
    let mut residuals = Vec::new();
    for (i, (label, result)) in checks.into_iter().enumerate() {
        match result {
            Ok((d, text)) => {
                if d >= APP_TOLERANCE {
                    failures.push(Failure {
                        trial: i,
                        seed: 0,
                        inputs: label.clone(),
                        expected: format!("residual < {APP_TOLERANCE:e}"),
                        actual: text.clone(),
                    });
                }
                residuals.push((label, format!("{d:.3e}")));
            }
            Err(e) => failures.push(Failure {
                trial: i,
                seed: 0,
                inputs: label,
                expected: "finite fraction and series values".into(),
                actual: e.to_string(),
            }),
        }
    }
    VerifyReport::new("apps", trials, failures, residuals)
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Eq4 => "eq4",
        Suite::Phi => "phi",
        Suite::Bridge => "bridge",
        Suite::Apps => "apps",
        Suite::All => "all",
    }
}

type Trial = fn(&mut ChaCha8Rng) -> Option<(String, String, String)>;

pub fn run_suite(suite: Suite, seed: u64, trials: Option<usize>, precision: usize) -> Vec<VerifyReport> {
    let randomized = |default: usize, trial: Trial| {
        let n = trials.unwrap_or(default);
        vec![VerifyReport::new(suite_name(suite), n, run_trials(seed, suite, n, trial), Vec::new())]
    };
    match suite {
        Suite::Eq4 => randomized(200, eq4_trial),
        Suite::Phi => randomized(100, phi_trial),
        Suite::Bridge => randomized(100, bridge_trial),
        Suite::Apps => vec![apps_report(precision)],
        Suite::All => [Suite::Eq4, Suite::Phi, Suite::Bridge, Suite::Apps]
            .into_iter()
            .flat_map(|s| run_suite(s, seed, trials, precision))
            .collect(),
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: &'a RunConfig,
    status: &'static str,
    reports: &'a [VerifyReport],
}

/// Runs the suites; returns the rendered output and whether all passed.
pub fn verify(opts: &GlobalOpts, args: &VerifyArgs, config: &RunConfig) -> Result<(String, bool), CliError> {
    if args.trials == Some(0) {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let reports = run_suite(args.suite, opts.seed, args.trials, opts.precision_bits);
    let passed = reports.iter().all(VerifyReport::passed);
    let text = match opts.format {
        Format::Json => output::json(&VerifyOutput { config, status: if passed { "pass" } else { "fail" }, reports: &reports }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    let detail = match r.failures.first() {
                        Some(f) => format!("first failure: trial {} seed {}", f.trial, f.seed),
                        None => r.residuals.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("; "),
                    };
                    vec![r.suite.into(), r.trials.to_string(), r.failures.len().to_string(), r.status.into(), detail]
                })
                .collect();
            output::csv(&["suite", "trials", "failures", "status", "detail"], &rows)
        }
    };
    Ok((text, passed))
}
