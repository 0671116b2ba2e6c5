use dashu::float::round::mode::HalfEven;
use dashu::base::{BitTest, Signed, UnsignedAbs};
use dashu::float::{Context, FBig, Repr};

use super::{Field, Rational, ScalarError};

/// Binary float with round-half-even.
pub type Float = FBig<HalfEven, 2>;

/// Default mantissa width in bits.
pub const DEFAULT_PRECISION_BITS: usize = 128;

/// Floating-point realization with a fixed mantissa width.
///
/// Every operation rounds to `precision` bits regardless of the operands'
/// own precision, so values produced elsewhere are brought to the field's
/// precision on first use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloatField {
    precision: usize,
}

impl Default for FloatField {
    fn default() -> Self {
        Self::new(DEFAULT_PRECISION_BITS)
    }
}

impl FloatField {
    pub fn new(precision: usize) -> Self {
        assert!(precision >= 2, "float precision must be at least 2 bits");
        Self { precision }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    fn ctx(&self) -> Context<HalfEven> {
        Context::new(self.precision)
    }

    pub fn from_f64(&self, x: f64) -> Float {
        let r = Rational::try_from(x).expect("finite f64");
        self.from_rational(&r)
    }

    pub fn to_f64(&self, x: &Float) -> f64 {
        x.to_f64().value()
    }

    pub fn abs(&self, x: &Float) -> Float {
        if x.repr().significand().is_negative() {
            self.neg(x)
        } else {
            x.clone()
        }
    }

    pub fn sqrt(&self, x: &Float) -> Float {
        self.ctx().sqrt(x.repr()).value()
    }

    /// Significant decimal digits needed so that rendering and re-parsing
    /// recovers the same binary value.
    pub fn decimal_digits(&self) -> usize {
        (self.precision as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

impl Field for FloatField {
    type Elem = Float;

    fn name(&self) -> String {
        format!("float{}", self.precision)
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn precision_bits(&self) -> Option<usize> {
        Some(self.precision)
    }

    fn zero(&self) -> Float {
        Float::ZERO
    }

    fn one(&self) -> Float {
        Float::ONE
    }

    fn from_rational(&self, r: &Rational) -> Float {
        r.to_float::<HalfEven, 2>(self.precision).value()
    }

    fn add(&self, a: &Float, b: &Float) -> Float {
        self.ctx().add(a.repr(), b.repr()).value()
    }

    fn sub(&self, a: &Float, b: &Float) -> Float {
        self.ctx().sub(a.repr(), b.repr()).value()
    }

    fn mul(&self, a: &Float, b: &Float) -> Float {
        self.ctx().mul(a.repr(), b.repr()).value()
    }

    fn neg(&self, a: &Float) -> Float {
        -a.clone()
    }

    fn div(&self, a: &Float, b: &Float) -> Result<Float, ScalarError> {
        if b.repr().is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.ctx().div(a.repr(), b.repr()).value())
    }

    fn is_zero(&self, a: &Float) -> bool {
        a.repr().is_zero()
    }

    fn magnitude(&self, a: &Float) -> f64 {
        self.to_f64(a).abs()
    }

    fn close_to(&self, a: &Float, b: &Float, eps: f64) -> bool {
        let diff = self.magnitude(&self.sub(a, b));
        let scale = 1f64.max(self.magnitude(a)).max(self.magnitude(b));
        diff <= eps * scale
    }

    fn as_rational(&self, a: &Float) -> Option<Rational> {
        Rational::try_from(a.clone()).ok()
    }

    fn render(&self, a: &Float) -> String {
        render_decimal(a, self.decimal_digits())
    }

    fn render_abs_diff(&self, a: &Float, b: &Float) -> String {
        self.render(&self.abs(&self.sub(a, b)))
    }

    fn log2_magnitude(&self, a: &Float) -> Option<i64> {
        let repr = a.repr();
        if repr.is_zero() {
            return None;
        }
        let bits = repr.significand().unsigned_abs().bit_len() as i64;
        Some(repr.exponent() as i64 + bits - 1)
    }

    fn scale_pow2(&self, a: &Float, k: i64) -> Float {
        let repr = a.repr();
        if repr.is_zero() {
            return a.clone();
        }
        let shifted = Repr::<2>::new(repr.significand().clone(), repr.exponent() + k as isize);
        Float::from_repr(shifted, self.ctx())
    }
}

/// Decimal rendering with `digits` significant digits. Positional notation
/// for moderate exponents, `d.ddde±x` otherwise.
pub(crate) fn render_decimal(a: &Float, digits: usize) -> String {
    if a.repr().is_zero() {
        return "0".into();
    }
    let dec = a.clone().with_base_and_precision::<10>(digits).value();
    let repr = dec.repr();
    let negative = repr.significand().is_negative();
    let mut sig = repr.significand().unsigned_abs().to_string();
    let mut exp = repr.exponent() as i64;
    // strip trailing zeros of the significand
    while sig.len() > 1 && sig.ends_with('0') {
        sig.pop();
        exp += 1;
    }
    let len = sig.len() as i64;
    let lead_exp = len - 1 + exp;
    let body = if (-7..21).contains(&lead_exp) {
        if exp >= 0 {
            format!("{sig}{}", "0".repeat(exp as usize))
        } else if len + exp > 0 {
            let split = (len + exp) as usize;
            format!("{}.{}", &sig[..split], &sig[split..])
        } else {
            format!("0.{}{sig}", "0".repeat((-(len + exp)) as usize))
        }
    } else if len == 1 {
        format!("{sig}e{lead_exp}")
    } else {
        format!("{}.{}e{lead_exp}", &sig[..1], &sig[1..])
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    #[test]
    fn close_to_examples() {
        let f = FloatField::default();
        let half = f.parse("0.5").unwrap();
        let nudged = f.add(&half, &f.parse("1e-20").unwrap());
        assert!(f.close_to(&half, &nudged, 1e-12));
        assert!(f.close_to(&nudged, &half, 1e-12));
        assert!(!f.close_to(&f.one(), &f.from_int(2), 1e-12));
        let d = f.sub(&nudged, &nudged);
        assert_eq!(f.magnitude(&d), 0.0);
    }

    #[test]
    fn rendering_is_round_trip_safe() {
        let f = FloatField::default();
        let third = f.div(&f.one(), &f.from_int(3)).unwrap();
        let text = f.render(&third);
        assert!(text.starts_with("0.3333333333"));
        let back = f.parse(&text).unwrap();
        assert_eq!(back, third);
        assert_eq!(f.render(&f.one()), "1");
        assert_eq!(f.render(&f.from_int(-250)), "-250");
        assert_eq!(f.render(&f.zero()), "0");
        let tiny = f.parse("1.5e-30").unwrap();
        assert!(f.render(&tiny).ends_with("e-30"));
        assert_eq!(f.parse(&f.render(&tiny)).unwrap(), tiny);
    }

    #[test]
    fn scale_pow2_preserves_value_up_to_exponent() {
        let f = FloatField::default();
        let x = f.parse("3/7").unwrap();
        let y = f.scale_pow2(&x, 600);
        assert_eq!(f.log2_magnitude(&y), Some(f.log2_magnitude(&x).unwrap() + 600));
        assert_eq!(f.scale_pow2(&y, -600), x);
    }

    #[test]
    fn precision_is_enforced_on_every_op() {
        let f = FloatField::new(64);
        let a = f.from_rational(&parse_rational("1/3").unwrap());
        let b = FloatField::new(256).from_rational(&parse_rational("1/7").unwrap());
        let s = f.add(&a, &b);
        assert!(s.precision() <= 64);
    }
}
