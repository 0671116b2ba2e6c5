use dashu::base::{Abs, Sign};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::{Field, ScalarError};

/// Exact rational value. `RBig` is always stored reduced with a positive
/// denominator.
pub type Rational = RBig;

/// Exact rational arithmetic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn name(&self) -> String {
        "rational".into()
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn zero(&self) -> Rational {
        Rational::ZERO
    }

    fn one(&self) -> Rational {
        Rational::ONE
    }

    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn div(&self, a: &Rational, b: &Rational) -> Result<Rational, ScalarError> {
        if b.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(a / b)
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn magnitude(&self, a: &Rational) -> f64 {
        rational_to_f64(a).abs()
    }

    fn close_to(&self, a: &Rational, b: &Rational, _eps: f64) -> bool {
        a == b
    }

    fn as_rational(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }

    fn render(&self, a: &Rational) -> String {
        render_rational(a)
    }

    fn render_abs_diff(&self, a: &Rational, b: &Rational) -> String {
        render_rational(&(a - b).abs())
    }
}

/// `p/q` form, or just `p` for integers.
pub(crate) fn render_rational(r: &Rational) -> String {
    if r.denominator() == &UBig::ONE {
        r.numerator().to_string()
    } else {
        format!("{}/{}", r.numerator(), r.denominator())
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().value()
}

/// Parses `p`, `p/q`, `d.ddd`, with optional leading sign and an optional
/// decimal exponent (`1.5e-3`). The result is exact.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let err = || ScalarError::Parse(text.to_string());
    let s = text.trim();
    let (sign, body) = match s.as_bytes().first() {
        Some(b'-') => (Sign::Negative, &s[1..]),
        Some(b'+') => (Sign::Positive, &s[1..]),
        _ => (Sign::Positive, s),
    };
    if body.is_empty() {
        return Err(err());
    }
    let value = if let Some((num, den)) = body.split_once('/') {
        let n = parse_digits(num).ok_or_else(err)?;
        let d = parse_digits(den).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        RBig::from_parts(IBig::from(n), d)
    } else {
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(pos) => {
                let e: i64 = body[pos + 1..].parse().map_err(|_| err())?;
                (&body[..pos], e)
            }
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let int_val = if int_part.is_empty() {
            UBig::ZERO
        } else {
            parse_digits(int_part).ok_or_else(err)?
        };
        let frac_val = if frac_part.is_empty() {
            UBig::ZERO
        } else {
            parse_digits(frac_part).ok_or_else(err)?
        };
        let scale = UBig::from(10u8).pow(frac_part.len());
        let digits = int_val * &scale + frac_val;
        let exp10 = exp - frac_part.len() as i64;
        let pow = UBig::from(10u8).pow(exp10.unsigned_abs() as usize);
        if exp10 >= 0 {
            RBig::from(digits * pow)
        } else {
            RBig::from_parts(IBig::from(digits), pow)
        }
    };
    Ok(if sign == Sign::Negative { -value } else { value })
}

fn parse_digits(s: &str) -> Option<UBig> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    UBig::from_str_radix(s, 10).ok()
}
