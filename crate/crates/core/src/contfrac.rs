//! Evaluation of `K = a_0/(b_0 + a_1/(b_1 + a_2/(b_2 + ...)))`.
//!
//! Three independent paths: the convergent recurrences, backward
//! (innermost-first) evaluation, and modified Lentz iteration. Equivalence
//! transformations rescale coefficients without changing convergent values.

use crate::coeffspec::CoeffSeq;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Field};

/// Convergent magnitudes are kept within `2^-RESCALE_EXP ..= 2^RESCALE_EXP`
/// in approximate realizations.
pub const RESCALE_EXP: i64 = 512;

/// The `index`-th convergent `P/Q`, unreduced.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergent<E> {
    pub index: usize,
    pub p: E,
    pub q: E,
    /// `P/Q`, or `None` when `Q = 0` (the convergent is at infinity).
    pub value: Option<E>,
}

/// Convergents `0..=depth` by `P_n = b_n P_{n-1} + a_n P_{n-2}`,
/// `Q_n = b_n Q_{n-1} + a_n Q_{n-2}` from `P_{-1} = 0, Q_{-1} = 1,
/// P_0 = a_0, Q_0 = b_0`.
///
/// In approximate realizations both pairs are rescaled by a common power of
/// two whenever `max(|P|, |Q|)` leaves `[2^-512, 2^512]`.
pub fn convergents<F: Field>(coeffs: &CoeffSeq<F>, depth: usize) -> Result<Vec<Convergent<F::Elem>>> {
    let f = coeffs.field();
    let mut out = Vec::with_capacity(depth + 1);
    let (mut p_prev, mut q_prev) = (f.zero(), f.one());
    let (mut p, mut q) = (coeffs.a(0)?, coeffs.b(0)?);
    for n in 0..=depth {
        if n > 0 {
            let (a, b) = (coeffs.a(n)?, coeffs.b(n)?);
            let p_next = f.add(&f.mul(&b, &p), &f.mul(&a, &p_prev));
            let q_next = f.add(&f.mul(&b, &q), &f.mul(&a, &q_prev));
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
        }
        let scale = match (f.log2_magnitude(&p), f.log2_magnitude(&q)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        };
        if let Some(e) = scale.filter(|e| e.abs() > RESCALE_EXP) {
            p = f.scale_pow2(&p, -e);
            q = f.scale_pow2(&q, -e);
            p_prev = f.scale_pow2(&p_prev, -e);
            q_prev = f.scale_pow2(&q_prev, -e);
        }
        let value = f.div(&p, &q).ok();
        out.push(Convergent { index: n, p: p.clone(), q: q.clone(), value });
    }
    Ok(out)
}

/// Backward evaluation of the fraction truncated after `a_depth/b_depth`.
pub fn eval_backward<F: Field>(coeffs: &CoeffSeq<F>, depth: usize) -> Result<F::Elem> {
    let f = coeffs.field();
    let mut t = f.zero();
    for n in (0..=depth).rev() {
        let den = f.add(&coeffs.b(n)?, &t);
        t = f
            .div(&coeffs.a(n)?, &den)
            .map_err(|_| Error::ZeroDenominator { index: n, what: "b_n + t_(n+1)" })?;
    }
    Ok(t)
}

/// Outcome of a converged Lentz run.
#[derive(Debug, Clone, PartialEq)]
pub struct LentzValue<E> {
    pub value: E,
    /// Levels consumed beyond the head `a_0/b_0`.
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LentzError<E: std::fmt::Debug> {
    #[error("no convergence after {iterations} iterations")]
    NonConvergence { last: E, iterations: usize },
    #[error("Lentz iteration needs an approximate realization, got {0}")]
    ExactRealization(String),
    #[error(transparent)]
    Other(#[from] Error),
}

impl<E: std::fmt::Debug> From<crate::coeffspec::CoeffError> for LentzError<E> {
    fn from(e: crate::coeffspec::CoeffError) -> Self {
        LentzError::Other(e.into())
    }
}

impl<E: std::fmt::Debug> From<crate::scalar::ScalarError> for LentzError<E> {
    fn from(e: crate::scalar::ScalarError) -> Self {
        LentzError::Other(e.into())
    }
}

/// Floor substituted for vanishing Lentz accumulators: `1e-30` scaled by the
/// working unit roundoff relative to double precision.
fn lentz_floor<F: Field>(field: &F, precision: usize) -> (F::Elem, f64) {
    let shift = -(precision as i64 - 53);
    let base = field.from_rational(&parse_rational("1e-30").expect("literal"));
    let tiny = field.scale_pow2(&base, shift);
    (tiny, 1e-30 * 2f64.powi(shift as i32))
}

/// Modified Lentz evaluation. The denominator `b_0 + a_1/(b_1 + ...)` is
/// iterated until the per-step multiplier is within `eps` of 1, then
/// `a_0` is divided by it.
pub fn eval_lentz<F: Field>(
    coeffs: &CoeffSeq<F>,
    eps: f64,
    max_iter: usize,
) -> std::result::Result<LentzValue<F::Elem>, LentzError<F::Elem>> {
    let f = coeffs.field();
    let precision = f.precision_bits().ok_or_else(|| LentzError::ExactRealization(f.name()))?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument("eps must be positive".into()).into());
    }
    let (tiny, tiny_mag) = lentz_floor(f, precision);
    let floor = |x: F::Elem| if f.magnitude(&x) < tiny_mag { tiny.clone() } else { x };

    let a0 = coeffs.a(0)?;
    let mut acc = floor(coeffs.b(0)?);
    let mut c = acc.clone();
    let mut d = f.zero();
    let one = f.one();
    for j in 1..=max_iter {
        let (a, b) = (coeffs.a(j)?, coeffs.b(j)?);
        d = floor(f.add(&b, &f.mul(&a, &d)));
        c = floor(f.add(&b, &f.div(&a, &c)?));
        d = f.inv(&d)?;
        let delta = f.mul(&c, &d);
        acc = f.mul(&acc, &delta);
        if f.magnitude(&f.sub(&delta, &one)) < eps {
            return Ok(LentzValue { value: f.div(&a0, &acc)?, iterations: j });
        }
    }
    Err(LentzError::NonConvergence { last: f.div(&a0, &acc)?, iterations: max_iter })
}

/// Equivalence transform with factors `r` (`r_0 = 1`, all nonzero):
/// `a'_m = r_m r_{m-1} a_m`, `b'_m = r_m b_m`. Factors beyond `r` are 1.
/// Convergent values are unchanged.
pub fn equivalence_transform<F: Field>(coeffs: &CoeffSeq<F>, r: &[F::Elem]) -> Result<CoeffSeq<F>> {
    let f = coeffs.field();
    if let Some(r0) = r.first() {
        if r0 != &f.one() {
            return Err(Error::InvalidArgument("equivalence factor r_0 must be 1".into()));
        }
    }
    if let Some(m) = r.iter().position(|x| f.is_zero(x)) {
        return Err(Error::InvalidArgument(format!("equivalence factor r_{m} is zero")));
    }
    Ok(coeffs.with_scale(r))
}
