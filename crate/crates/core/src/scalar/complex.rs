use super::{Field, FloatField, Rational, RationalField, ScalarError};

/// A complex value over a base field's elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

/// Complex numbers as pairs over a base field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComplexField<F> {
    base: F,
}

impl<F: Field> ComplexField<F> {
    pub fn new(base: F) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn from_parts(&self, re: F::Elem, im: F::Elem) -> Complex<F::Elem> {
        Complex { re, im }
    }

    fn modulus_f64(&self, a: &Complex<F::Elem>) -> f64 {
        self.base.magnitude(&a.re).hypot(self.base.magnitude(&a.im))
    }

    fn norm_sqr(&self, a: &Complex<F::Elem>) -> F::Elem {
        let b = &self.base;
        b.add(&b.mul(&a.re, &a.re), &b.mul(&a.im, &a.im))
    }
}

impl<F: Field> Field for ComplexField<F> {
    type Elem = Complex<F::Elem>;

    fn name(&self) -> String {
        format!("complex-{}", self.base.name())
    }

    fn is_exact(&self) -> bool {
        self.base.is_exact()
    }

    fn precision_bits(&self) -> Option<usize> {
        self.base.precision_bits()
    }

    fn zero(&self) -> Self::Elem {
        Complex { re: self.base.zero(), im: self.base.zero() }
    }

    fn one(&self) -> Self::Elem {
        Complex { re: self.base.one(), im: self.base.zero() }
    }

    fn from_rational(&self, r: &Rational) -> Self::Elem {
        Complex { re: self.base.from_rational(r), im: self.base.zero() }
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Complex { re: self.base.add(&a.re, &b.re), im: self.base.add(&a.im, &b.im) }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Complex { re: self.base.sub(&a.re, &b.re), im: self.base.sub(&a.im, &b.im) }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        Complex {
            re: f.sub(&f.mul(&a.re, &b.re), &f.mul(&a.im, &b.im)),
            im: f.add(&f.mul(&a.re, &b.im), &f.mul(&a.im, &b.re)),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Complex { re: self.base.neg(&a.re), im: self.base.neg(&a.im) }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        if self.is_zero(b) {
            return Err(ScalarError::DivisionByZero);
        }
        let f = &self.base;
        let den = self.norm_sqr(b);
        let re = f.add(&f.mul(&a.re, &b.re), &f.mul(&a.im, &b.im));
        let im = f.sub(&f.mul(&a.im, &b.re), &f.mul(&a.re, &b.im));
        Ok(Complex { re: f.div(&re, &den)?, im: f.div(&im, &den)? })
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.im)
    }

    fn magnitude(&self, a: &Self::Elem) -> f64 {
        self.modulus_f64(a)
    }

    fn close_to(&self, a: &Self::Elem, b: &Self::Elem, eps: f64) -> bool {
        if self.is_exact() {
            return a == b;
        }
        let diff = self.modulus_f64(&self.sub(a, b));
        let scale = 1f64.max(self.modulus_f64(a)).max(self.modulus_f64(b));
        diff <= eps * scale
    }

    fn as_rational(&self, a: &Self::Elem) -> Option<Rational> {
        if self.base.is_zero(&a.im) {
            self.base.as_rational(&a.re)
        } else {
            None
        }
    }

    fn render(&self, a: &Self::Elem) -> String {
        let im = self.base.render(&a.im);
        if im.starts_with('-') {
            format!("{}{}i", self.base.render(&a.re), im)
        } else {
            format!("{}+{}i", self.base.render(&a.re), im)
        }
    }

    fn render_abs_diff(&self, a: &Self::Elem, b: &Self::Elem) -> String {
        let d = self.sub(a, b);
        if self.is_exact() {
            // squared modulus keeps the value exact
            format!("sqrt({})", self.base.render(&self.norm_sqr(&d)))
        } else {
            format!("{:e}", self.modulus_f64(&d))
        }
    }

    /// Accepts `re`, `re,im`, or the suffix form `re+imi` / `re-imi`.
    fn parse(&self, text: &str) -> Result<Self::Elem, ScalarError> {
        let t = text.trim();
        if let Some((re, im)) = t.split_once(',') {
            return Ok(Complex { re: self.base.parse(re)?, im: self.base.parse(im)? });
        }
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not a leading sign or exponent sign
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
            return match split {
                Some(k) => {
                    let im = if &body[k..] == "+" || &body[k..] == "-" {
                        format!("{}1", &body[k..])
                    } else {
                        body[k..].to_string()
                    };
                    Ok(Complex { re: self.base.parse(&body[..k])?, im: self.base.parse(&im)? })
                }
                None => {
                    let im = if body.is_empty() || body == "+" || body == "-" {
                        format!("{body}1")
                    } else {
                        body.to_string()
                    };
                    Ok(Complex { re: self.base.zero(), im: self.base.parse(&im)? })
                }
            };
        }
        Ok(Complex { re: self.base.parse(t)?, im: self.base.zero() })
    }

    fn log2_magnitude(&self, a: &Self::Elem) -> Option<i64> {
        match (self.base.log2_magnitude(&a.re), self.base.log2_magnitude(&a.im)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        }
    }

    fn scale_pow2(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        Complex { re: self.base.scale_pow2(&a.re, k), im: self.base.scale_pow2(&a.im, k) }
    }
}

impl ComplexField<FloatField> {
    /// Modulus at working precision.
    pub fn modulus(&self, a: &Complex<super::Float>) -> super::Float {
        self.base.sqrt(&self.norm_sqr(a))
    }
}

/// Exact complex rationals.
pub type ComplexRationalField = ComplexField<RationalField>;
