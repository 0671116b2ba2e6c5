//! Scalar fields.
//!
//! Every numeric value in the crate (coefficients, solution values, tails,
//! g-weights, series parameters) lives in a [`Field`]. A field is a small
//! context object that owns the realization's configuration (float precision,
//! series variable and truncation degree) and performs arithmetic on plain
//! element values. Four realizations are provided:
//!
//! - [`RationalField`]: exact big rationals, always in lowest terms.
//! - [`FloatField`]: binary floating point with a configurable mantissa width.
//! - [`ComplexField`]: pairs over either of the above.
//! - [`SeriesField`]: power series with rational coefficients truncated at a
//!   fixed degree.

mod complex;
mod float;
pub(crate) mod rational;
mod series;

pub use complex::{Complex, ComplexField, ComplexRationalField};
pub use float::{Float, FloatField, DEFAULT_PRECISION_BITS};
pub use rational::{parse_rational, Rational, RationalField};
pub use series::{SeriesField, TruncatedSeries};

use std::fmt::Debug;

use dashu::integer::IBig;

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("series constant term is zero; not invertible")]
    NonInvertibleSeries,
    #[error("configuration mismatch: {0}")]
    Config(String),
    #[error("cannot parse scalar literal {0:?}")]
    Parse(String),
}

/// A scalar field realization.
///
/// Elements are immutable values; all operations are pure.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    /// Short realization name (`rational`, `float`, ...).
    fn name(&self) -> String;

    /// Whether arithmetic is exact (rationals, series, complex over rationals).
    fn is_exact(&self) -> bool;

    /// Whether elements are formal series rather than numbers.
    fn is_formal(&self) -> bool {
        false
    }

    /// Mantissa width in bits for approximate realizations, `None` for exact ones.
    fn precision_bits(&self) -> Option<usize> {
        None
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, r: &Rational) -> Self::Elem;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        self.div(&self.one(), a)
    }

    /// Approximate magnitude as an `f64` (modulus for complex values,
    /// largest coefficient modulus for series). Used only by stopping rules.
    fn magnitude(&self, a: &Self::Elem) -> f64;

    /// Equality for exact realizations; relative closeness
    /// `|x-y| <= eps * max(1, |x|, |y|)` otherwise.
    fn close_to(&self, a: &Self::Elem, b: &Self::Elem, eps: f64) -> bool;

    /// The exact rational value of `a`, when it has one.
    fn as_rational(&self, a: &Self::Elem) -> Option<Rational>;

    /// Deterministic text form. Exact values render as `p/q`.
    fn render(&self, a: &Self::Elem) -> String;

    /// Text form of `|a - b|`.
    fn render_abs_diff(&self, a: &Self::Elem, b: &Self::Elem) -> String;

    /// Parses a literal in this realization (rational or decimal by default).
    fn parse(&self, text: &str) -> Result<Self::Elem, ScalarError> {
        Ok(self.from_rational(&parse_rational(text)?))
    }

    /// Binary exponent of the magnitude for approximate realizations, used to
    /// keep convergent numerators and denominators in range. `None` for exact
    /// realizations and for zero.
    fn log2_magnitude(&self, _a: &Self::Elem) -> Option<i64> {
        None
    }

    /// Multiplies by `2^k`.
    fn scale_pow2(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let p = Rational::from(IBig::ONE << k.unsigned_abs() as usize);
        let f = if k >= 0 { p } else { Rational::ONE / p };
        self.mul(a, &self.from_rational(&f))
    }

    /// Integer power by repeated squaring.
    fn powi(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem, ScalarError> {
        if e < 0 {
            if self.is_zero(a) {
                return Err(ScalarError::ZeroToNegativePower);
            }
            let p = self.powi(a, -(e as i128) as i64)?;
            return self.inv(&p);
        }
        let mut base = a.clone();
        let mut acc = self.one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }
}

/// Returns `close_to` under the field's own rules.
pub fn close_to<F: Field>(field: &F, x: &F::Elem, y: &F::Elem, eps: f64) -> bool {
    field.close_to(x, y, eps)
}
