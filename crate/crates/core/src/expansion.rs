//! Closed-form solution of the three-term recurrence as gap-constrained
//! subset sums.
//!
//! With `g_i = a_i/(b_{i-1} b_i)` and
//! `Phi_{q,n} = sum over subsets S of {q, ..., n-2} whose consecutive
//! elements differ by at least 2 of prod_{i in S} g_i` (empty subset = 1),
//! every solution of `x_{m+2} = b_m x_{m+1} + a_m x_m` satisfies
//!
//! ```text
//! x_n = prod_{i=0}^{n-2} b_i * ( x_1 Phi_{1,n} + x_0 (a_0/b_0) Phi_{2,n} )
//! ```
//!
//! The product starts at `i = 0`; starting it at `i = 1` already fails at
//! `n = 2`, where the identity must reduce to `x_2 = b_0 x_1 + a_0 x_0`.
//!
//! The continued fraction's `m`-th convergent is the finite ratio
//! `(a_0/b_0) Phi_{2,m+2} / Phi_{1,m+2}`.

use crate::coeffspec::CoeffSeq;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Largest index set [`phi_enumerate`] will walk.
pub const ENUMERATION_LIMIT: usize = 24;

/// `g_1..=g_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GWeights<E> {
    g: Vec<E>,
}

impl<E> GWeights<E> {
    pub fn from_vec(g: Vec<E>) -> Self {
        Self { g }
    }

    /// `g_i`, 1-based.
    pub fn get(&self, i: usize) -> &E {
        &self.g[i - 1]
    }

    /// Largest available index.
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.g
    }
}

/// Gap-constrained sums over `{start, ..., end-2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiTable<E> {
    pub start: usize,
    pub end: usize,
    /// `Phi_{start,end}`.
    pub total: E,
    /// `S_0, ..., S_dmax`: contributions of subsets with exactly `d` elements.
    pub by_depth: Vec<E>,
}

impl<E> PhiTable<E> {
    /// Number of indices in `{start, ..., end-2}`.
    pub fn set_size(&self) -> usize {
        index_set_size(self.start, self.end)
    }

    /// Whether `by_depth` holds every nonzero layer.
    pub fn is_complete(&self) -> bool {
        self.by_depth.len() > self.set_size().div_ceil(2)
    }
}

fn index_set_size(start: usize, end: usize) -> usize {
    (end.saturating_sub(2) + 1).saturating_sub(start)
}

/// `g_i = a_i / (b_{i-1} b_i)` for `i = 1..=n`.
pub fn g_weights<F: Field>(coeffs: &CoeffSeq<F>, n: usize) -> Result<GWeights<F::Elem>> {
    if n < 1 {
        return Err(Error::InvalidArgument("g-weights need n >= 1".into()));
    }
    let f = coeffs.field();
    let mut prev_b = coeffs.b(0)?;
    let mut g = Vec::with_capacity(n);
    for i in 1..=n {
        let b = coeffs.b(i)?;
        let den = f.mul(&prev_b, &b);
        let gi = f
            .div(&coeffs.a(i)?, &den)
            .map_err(|_| Error::ZeroDenominator { index: i, what: "b_(i-1) b_i" })?;
        g.push(gi);
        prev_b = b;
    }
    Ok(GWeights { g })
}

fn check_bounds<E>(g: &GWeights<E>, start: usize, end: usize) -> Result<()> {
    if start < 1 {
        return Err(Error::InvalidArgument("start index must be >= 1".into()));
    }
    if index_set_size(start, end) > 0 && end - 2 > g.len() {
        return Err(Error::InvalidArgument(format!(
            "index set reaches {} but only g_1..g_{} are available",
            end - 2,
            g.len()
        )));
    }
    Ok(())
}

/// Brute-force `Phi_{start,end}`: walks every subset of the index set and
/// keeps those without adjacent elements.
pub fn phi_enumerate<F: Field>(field: &F, g: &GWeights<F::Elem>, start: usize, end: usize) -> Result<F::Elem> {
    check_bounds(g, start, end)?;
    let size = index_set_size(start, end);
    if size > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard { size, limit: ENUMERATION_LIMIT });
    }
    let mut total = field.zero();
    for mask in 0u32..(1u32 << size) {
        if mask & (mask >> 1) != 0 {
            continue;
        }
        let mut prod = field.one();
        for bit in 0..size {
            if mask >> bit & 1 == 1 {
                prod = field.mul(&prod, g.get(start + bit));
            }
        }
        total = field.add(&total, &prod);
    }
    Ok(total)
}

/// `Phi_{start,end}` by `F(m) = F(m-1) + g_m F(m-2)`,
/// `F(start-1) = F(start-2) = 1`.
pub fn phi_dp<F: Field>(field: &F, g: &GWeights<F::Elem>, start: usize, end: usize) -> Result<F::Elem> {
    check_bounds(g, start, end)?;
    let mut prev2 = field.one();
    let mut prev1 = field.one();
    for m in start..end.saturating_sub(1) {
        let cur = field.add(&prev1, &field.mul(g.get(m), &prev2));
        prev2 = std::mem::replace(&mut prev1, cur);
    }
    Ok(prev1)
}

/// Depth-layered sums `S_0..=S_dmax` via `S_d(m) = S_d(m-1) + g_m S_{d-1}(m-2)`.
pub fn phi_by_depth<F: Field>(
    field: &F,
    g: &GWeights<F::Elem>,
    start: usize,
    end: usize,
    dmax: usize,
) -> Result<PhiTable<F::Elem>> {
    check_bounds(g, start, end)?;
    let layer = |d: usize| if d == 0 { field.one() } else { field.zero() };
    let mut prev2: Vec<F::Elem> = (0..=dmax).map(layer).collect();
    let mut prev1 = prev2.clone();
    for m in start..end.saturating_sub(1) {
        let mut cur = prev1.clone();
        for d in 1..=dmax {
            cur[d] = field.add(&prev1[d], &field.mul(g.get(m), &prev2[d - 1]));
        }
        prev2 = std::mem::replace(&mut prev1, cur);
    }
    Ok(PhiTable { start, end, total: phi_dp(field, g, start, end)?, by_depth: prev1 })
}

/// Product `b_0 ... b_{n-2}`, failing on the first zero factor.
fn b_product<F: Field>(coeffs: &CoeffSeq<F>, n: usize) -> Result<F::Elem> {
    let f = coeffs.field();
    let mut prod = f.one();
    for i in 0..=n - 2 {
        let b = coeffs.b(i)?;
        if f.is_zero(&b) {
            return Err(Error::ZeroDenominator { index: i, what: "b_i in the normalizing product" });
        }
        prod = f.mul(&prod, &b);
    }
    Ok(prod)
}

/// `a_0/b_0`, `Phi_{1,n}` and `Phi_{2,n}`.
fn head_and_phis<F: Field>(coeffs: &CoeffSeq<F>, n: usize) -> Result<(F::Elem, F::Elem, F::Elem)> {
    let f = coeffs.field();
    let b0 = coeffs.b(0)?;
    let head = f
        .div(&coeffs.a(0)?, &b0)
        .map_err(|_| Error::ZeroDenominator { index: 0, what: "b_0 in a_0/b_0" })?;
    let g = if n >= 3 { g_weights(coeffs, n - 2)? } else { GWeights::from_vec(Vec::new()) };
    Ok((head, phi_dp(f, &g, 1, n)?, phi_dp(f, &g, 2, n)?))
}

/// `x_n` from the seeds through the subset-sum formula; equals the forward
/// iterate exactly in exact realizations.
pub fn reconstruct<F: Field>(coeffs: &CoeffSeq<F>, x0: &F::Elem, x1: &F::Elem, n: usize) -> Result<F::Elem> {
    if n < 2 {
        return Err(Error::InvalidArgument("reconstruct needs n >= 2".into()));
    }
    let f = coeffs.field();
    let prod = b_product(coeffs, n)?;
    let (head, phi1, phi2) = head_and_phis(coeffs, n)?;
    let bracket = f.add(&f.mul(x1, &phi1), &f.mul(&f.mul(x0, &head), &phi2));
    Ok(f.mul(&prod, &bracket))
}

/// `(a_0/b_0) Phi_{2,n} / Phi_{1,n}`, the finite truncation of the series
/// form of the continued fraction. Equals the `(n-2)`-th convergent.
pub fn series_ratio_approx<F: Field>(coeffs: &CoeffSeq<F>, n: usize) -> Result<F::Elem> {
    if n < 2 {
        return Err(Error::InvalidArgument("series ratio needs n >= 2".into()));
    }
    let f = coeffs.field();
    b_product(coeffs, n)?;
    let (head, phi1, phi2) = head_and_phis(coeffs, n)?;
    if f.is_zero(&phi1) {
        return Err(Error::Degenerate { n });
    }
    Ok(f.mul(&head, &f.div(&phi2, &phi1)?))
}

/// Like [`series_ratio_approx`], but each `Phi` keeps only the layers
/// `S_0..=S_dmax`. Equals [`series_ratio_approx`] once `dmax` covers every
/// layer.
pub fn series_ratio_layered<F: Field>(coeffs: &CoeffSeq<F>, n: usize, dmax: usize) -> Result<F::Elem> {
    if n < 2 {
        return Err(Error::InvalidArgument("series ratio needs n >= 2".into()));
    }
    let f = coeffs.field();
    b_product(coeffs, n)?;
    let b0 = coeffs.b(0)?;
    let head = f
        .div(&coeffs.a(0)?, &b0)
        .map_err(|_| Error::ZeroDenominator { index: 0, what: "b_0 in a_0/b_0" })?;
    let g = if n >= 3 { g_weights(coeffs, n - 2)? } else { GWeights::from_vec(Vec::new()) };
    let layered = |start: usize| -> Result<F::Elem> {
        let table = phi_by_depth(f, &g, start, n, dmax)?;
        Ok(table.by_depth.iter().fold(f.zero(), |acc, s| f.add(&acc, s)))
    };
    let (phi1, phi2) = (layered(1)?, layered(2)?);
    if f.is_zero(&phi1) {
        return Err(Error::Degenerate { n });
    }
    Ok(f.mul(&head, &f.div(&phi2, &phi1)?))
}
