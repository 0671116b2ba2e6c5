//! Series sides of the classical continued fraction identities: the
//! confluent limit function `0F1`, the q-Pochhammer symbol, the
//! Rogers-Ramanujan pair `G`, `H`, and the alternating `|q| > 1` pair.
//!
//! Every sum uses the same stopping rule: summation ends once three
//! consecutive terms have norm below `eps * |partial sum|`, or when the term
//! cap is reached (flagged in the result).

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational, RationalField};

/// Default term cap for the series sums.
pub const DEFAULT_TERM_CAP: usize = 10_000;

const SMALL_RUN: usize = 3;

/// A partial sum together with its stopping diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue<E> {
    pub value: E,
    pub terms_used: usize,
    /// Norm of the last term that was added.
    pub last_term_norm: f64,
    /// Set when the cap was reached before the stopping rule fired.
    pub cap_hit: bool,
}

impl<E> SeriesValue<E> {
    fn map<T>(self, f: impl FnOnce(E) -> T) -> SeriesValue<T> {
        SeriesValue {
            value: f(self.value),
            terms_used: self.terms_used,
            last_term_norm: self.last_term_norm,
            cap_hit: self.cap_hit,
        }
    }
}

/// Tolerance and term cap for the series sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub eps: f64,
    pub cap: usize,
}

impl SeriesOptions {
    pub fn new(eps: f64, cap: usize) -> Self {
        Self { eps, cap }
    }

    fn check(&self) -> Result<()> {
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {}", self.eps)));
        }
        if self.cap == 0 {
            return Err(Error::InvalidArgument("term cap must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self { eps: 1e-30, cap: DEFAULT_TERM_CAP }
    }
}

/// Which Rogers-Ramanujan function to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RrKind {
    /// `G = sum q^(k^2) z^k / (q)_k`
    G,
    /// `H = sum q^(k(k+1)) z^k / (q)_k`
    H,
}

/// Which side of the `|q| > 1` identity to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum App3Kind {
    /// `sum (-1)^k z^k q^(-k(k+1)/2) / (q)_k`
    Numerator,
    /// `sum (-1)^k z^k q^(-k(k-1)/2) / (q)_k`
    Denominator,
}

/// Sums `t_0 + t_1 + ...` where `t_0 = 1` and `t_k = t_(k-1) * step(k)`.
fn sum_terms<F: Field>(
    field: &F,
    opts: SeriesOptions,
    mut step: impl FnMut(usize) -> Result<F::Elem>,
) -> Result<SeriesValue<F::Elem>> {
    opts.check()?;
    let mut term = field.one();
    let mut sum = field.one();
    let mut last_norm = 1.0;
    let mut small = 0;
    for k in 1..opts.cap {
        term = field.mul(&term, &step(k)?);
        sum = field.add(&sum, &term);
        last_norm = field.magnitude(&term);
        if last_norm < opts.eps * field.magnitude(&sum) || field.is_zero(&term) {
            small += 1;
            if small == SMALL_RUN {
                return Ok(SeriesValue { value: sum, terms_used: k + 1, last_term_norm: last_norm, cap_hit: false });
            }
        } else {
            small = 0;
        }
    }
    Ok(SeriesValue { value: sum, terms_used: opts.cap, last_term_norm: last_norm, cap_hit: true })
}

fn is_nonpositive_integer(r: &Rational) -> bool {
    r.denominator().is_one() && *r <= Rational::ZERO
}

/// `0F1(; c; z) = sum z^k / ((c)_k k!)`.
pub fn hyp0f1<F: Field>(field: &F, c: &F::Elem, z: &F::Elem, opts: SeriesOptions) -> Result<SeriesValue<F::Elem>> {
    if field.as_rational(c).is_some_and(|r| is_nonpositive_integer(&r)) {
        return Err(Error::Domain(format!("0F1 has a pole at c = {}", field.render(c))));
    }
    sum_terms(field, opts, |k| {
        // t_k / t_(k-1) = z / ((c + k - 1) k)
        let den = field.mul(&field.add(c, &field.from_int(k as i64 - 1)), &field.from_int(k as i64));
        field
            .div(z, &den)
            .map_err(|_| Error::Domain(format!("0F1 has a pole at c = {}", field.render(c))))
    })
}

/// `(q)_k = (1 - q)(1 - q^2)...(1 - q^k)`, with `(q)_0 = 1`.
pub fn q_pochhammer<F: Field>(field: &F, q: &F::Elem, k: usize) -> F::Elem {
    let one = field.one();
    let mut qj = one.clone();
    let mut acc = one.clone();
    for _ in 0..k {
        qj = field.mul(&qj, q);
        acc = field.mul(&acc, &field.sub(&one, &qj));
    }
    acc
}

fn pochhammer_factor<F: Field>(field: &F, qk: &F::Elem, k: usize) -> Result<F::Elem> {
    let den = field.sub(&field.one(), qk);
    if field.is_zero(&den) {
        return Err(Error::Domain(format!("(q)_k vanishes at k = {k}; q is a root of unity")));
    }
    Ok(den)
}

/// The Rogers-Ramanujan function `G` or `H` at `(q, z)`.
///
/// Requires `|q| < 1` unless the field is a truncated power series.
pub fn rr_series<F: Field>(
    field: &F,
    kind: RrKind,
    q: &F::Elem,
    z: &F::Elem,
    opts: SeriesOptions,
) -> Result<SeriesValue<F::Elem>> {
    if !field.is_formal() && field.magnitude(q) >= 1.0 {
        return Err(Error::Domain(format!("Rogers-Ramanujan series need |q| < 1, got q = {}", field.render(q))));
    }
    let mut q_prev = field.one();
    sum_terms(field, opts, |k| {
        // G: q^(2k-1) z / (1 - q^k);  H: q^(2k) z / (1 - q^k)
        let qk = field.mul(&q_prev, q);
        let mut num = field.mul(&field.mul(&q_prev, &qk), z);
        if kind == RrKind::H {
            num = field.mul(&num, q);
        }
        let den = pochhammer_factor(field, &qk, k)?;
        q_prev = qk;
        Ok(field.div(&num, &den)?)
    })
}

fn app3_in<F: Field>(
    field: &F,
    kind: App3Kind,
    q: &F::Elem,
    z: &F::Elem,
    opts: SeriesOptions,
) -> Result<SeriesValue<F::Elem>> {
    let q_inv = field.inv(q)?;
    let mut q_prev = field.one();
    let mut q_inv_prev = field.one();
    sum_terms(field, opts, |k| {
        // numerator: -z q^(-k) / (1 - q^k);  denominator: -z q^(-(k-1)) / (1 - q^k)
        let qk = field.mul(&q_prev, q);
        let q_inv_k = field.mul(&q_inv_prev, &q_inv);
        let scale = match kind {
            App3Kind::Numerator => &q_inv_k,
            App3Kind::Denominator => &q_inv_prev,
        };
        let num = field.neg(&field.mul(z, scale));
        let den = pochhammer_factor(field, &qk, k)?;
        q_prev = qk;
        q_inv_prev = q_inv_k;
        Ok(field.div(&num, &den)?)
    })
}

/// One side of the `|q| > 1` identity at `(q, z)`.
///
/// Requires `|q| > 1` unless the field is a truncated power series. When
/// both inputs are exactly representable as rationals in an inexact field,
/// the terms are summed in exact arithmetic and converted once at the end.
pub fn app3_series<F: Field>(
    field: &F,
    kind: App3Kind,
    q: &F::Elem,
    z: &F::Elem,
    opts: SeriesOptions,
) -> Result<SeriesValue<F::Elem>> {
    if !field.is_formal() && field.magnitude(q) <= 1.0 {
        return Err(Error::Domain(format!("this series needs |q| > 1, got q = {}", field.render(q))));
    }
    if !field.is_exact() && !field.is_formal() {
        if let (Some(qr), Some(zr)) = (field.as_rational(q), field.as_rational(z)) {
            let exact = app3_in(&RationalField, kind, &qr, &zr, opts)?;
            return Ok(exact.map(|v| field.from_rational(&v)));
        }
    }
    app3_in(field, kind, q, z, opts)
}

/// `0F1(; c+1; z) / 0F1(; c; z)`, the value of the `app1` preset.
pub fn app1_ratio<F: Field>(field: &F, c: &F::Elem, z: &F::Elem, opts: SeriesOptions) -> Result<F::Elem> {
    let num = hyp0f1(field, &field.add(c, &field.one()), z, opts)?;
    let den = hyp0f1(field, c, z, opts)?;
    Ok(field.div(&num.value, &den.value)?)
}

/// `H / G`, the value of the `app2` preset.
pub fn rr_ratio<F: Field>(field: &F, q: &F::Elem, z: &F::Elem, opts: SeriesOptions) -> Result<F::Elem> {
    let h = rr_series(field, RrKind::H, q, z, opts)?;
    let g = rr_series(field, RrKind::G, q, z, opts)?;
    Ok(field.div(&h.value, &g.value)?)
}

/// Numerator over denominator of the `|q| > 1` pair, the value of the
/// `app3-paper` (c = 0) and `app3-canonical` presets.
pub fn app3_ratio<F: Field>(field: &F, q: &F::Elem, z: &F::Elem, opts: SeriesOptions) -> Result<F::Elem> {
    let num = app3_series(field, App3Kind::Numerator, q, z, opts)?;
    let den = app3_series(field, App3Kind::Denominator, q, z, opts)?;
    Ok(field.div(&num.value, &den.value)?)
}
