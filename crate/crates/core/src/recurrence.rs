//! The three-term recurrence `x_{n+2} = b_n x_{n+1} + a_n x_n`: forward
//! iteration, tail sequences `t_n = a_n/(b_n + t_{n+1})`, and a backward
//! estimate of the minimal solution.

use crate::coeffspec::CoeffSeq;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `x_0..=x_n` of one solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPrefix<E> {
    pub values: Vec<E>,
    pub seeds: (E, E),
}

/// `t_0..=t_N` computed backward from the seed `t_{N+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailPrefix<E> {
    pub tails: Vec<E>,
    pub seed_depth: usize,
    pub seed_value: E,
}

impl<E> TailPrefix<E> {
    /// `t_0`, the depth-`N` estimate of the continued fraction.
    pub fn head(&self) -> &E {
        &self.tails[0]
    }
}

/// Iterates the recurrence forward from `x_0, x_1` up to `x_n`.
pub fn iterate<F: Field>(coeffs: &CoeffSeq<F>, x0: F::Elem, x1: F::Elem, n: usize) -> Result<SolutionPrefix<F::Elem>> {
    if n < 1 {
        return Err(Error::InvalidArgument("iterate needs n >= 1".into()));
    }
    let f = coeffs.field();
    let mut values = Vec::with_capacity(n + 1);
    values.push(x0.clone());
    values.push(x1.clone());
    for m in 0..n - 1 {
        let next = f.add(&f.mul(&coeffs.b(m)?, &values[m + 1]), &f.mul(&coeffs.a(m)?, &values[m]));
        values.push(next);
    }
    Ok(SolutionPrefix { values, seeds: (x0, x1) })
}

/// Computes `t_N, ..., t_0` from `t_{N+1} = 0`.
pub fn tail_backward<F: Field>(coeffs: &CoeffSeq<F>, depth: usize) -> Result<TailPrefix<F::Elem>> {
    let f = coeffs.field();
    let seed = f.zero();
    let mut tails = vec![f.zero(); depth + 1];
    let mut next = seed.clone();
    for n in (0..=depth).rev() {
        let den = f.add(&coeffs.b(n)?, &next);
        let t = f
            .div(&coeffs.a(n)?, &den)
            .map_err(|_| Error::ZeroDenominator { index: n, what: "b_n + t_(n+1)" })?;
        tails[n] = t.clone();
        next = t;
    }
    Ok(TailPrefix { tails, seed_depth: depth, seed_value: seed })
}

/// Runs the recurrence backward from `x_{N+2} = 0`, `x_{N+1} = 1` via
/// `x_m = (x_{m+2} - b_m x_{m+1}) / a_m` and normalizes to `x_0 = 1`.
/// Returns `x_0..=x_{N+1}`.
pub fn minimal_solution<F: Field>(coeffs: &CoeffSeq<F>, depth: usize) -> Result<Vec<F::Elem>> {
    let f = coeffs.field();
    let mut xs = vec![f.zero(); depth + 3];
    xs[depth + 1] = f.one();
    for m in (0..=depth).rev() {
        let a = coeffs.a(m)?;
        if f.is_zero(&a) {
            return Err(Error::ZeroNumerator { index: m });
        }
        let num = f.sub(&xs[m + 2], &f.mul(&coeffs.b(m)?, &xs[m + 1]));
        xs[m] = f.div(&num, &a)?;
    }
    xs.truncate(depth + 2);
    if f.is_zero(&xs[0]) {
        return Err(Error::Normalization);
    }
    let x0 = xs[0].clone();
    xs.iter().map(|x| f.div(x, &x0).map_err(Error::from)).collect()
}

/// `x_n` of the normalized backward solution, `0 <= n <= N`. The ratio
/// `-x_1/x_0` estimates the continued fraction.
pub fn minimal_estimate<F: Field>(coeffs: &CoeffSeq<F>, depth: usize, n: usize) -> Result<F::Elem> {
    if n > depth {
        return Err(Error::InvalidArgument(format!("index {n} exceeds depth {depth}")));
    }
    Ok(minimal_solution(coeffs, depth)?.swap_remove(n))
}

/// Result of substituting `t_n = -x_{n+1}/x_n` into `t_n (b_n + t_{n+1}) = a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailCheck<E> {
    /// `(n, t_n (b_n + t_{n+1}) - a_n)` for every checkable `n`.
    pub residuals: Vec<(usize, E)>,
    /// Indices skipped because `x_n` or `x_{n+1}` is zero.
    pub skipped: Vec<usize>,
}

/// `t_n = -x_{n+1}/x_n`, or `None` where `x_n = 0`.
pub fn tails_from_solution<F: Field>(field: &F, values: &[F::Elem]) -> Vec<Option<F::Elem>> {
    values
        .windows(2)
        .map(|w| field.div(&field.neg(&w[1]), &w[0]).ok())
        .collect()
}

/// Checks the tail relation along a solution prefix.
pub fn check_tail_relation<F: Field>(coeffs: &CoeffSeq<F>, values: &[F::Elem]) -> Result<TailCheck<F::Elem>> {
    let f = coeffs.field();
    let tails = tails_from_solution(f, values);
    let mut residuals = Vec::new();
    let mut skipped = Vec::new();
    for n in 0..tails.len().saturating_sub(1) {
        match (&tails[n], &tails[n + 1]) {
            (Some(t), Some(t_next)) => {
                let lhs = f.mul(t, &f.add(&coeffs.b(n)?, t_next));
                residuals.push((n, f.sub(&lhs, &coeffs.a(n)?)));
            }
            _ => skipped.push(n),
        }
    }
    Ok(TailCheck { residuals, skipped })
}
