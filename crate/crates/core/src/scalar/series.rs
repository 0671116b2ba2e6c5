use std::sync::Arc;

use dashu::base::Abs;

use super::rational::{rational_to_f64, render_rational};
use super::{Field, Rational, ScalarError};

/// A power series in one variable with exact rational coefficients,
/// truncated after degree `N`. Always stores exactly `N + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    var: Arc<str>,
}

impl TruncatedSeries {
    pub fn zero(var: &str, degree: usize) -> Self {
        Self { coeffs: vec![Rational::ZERO; degree + 1], var: Arc::from(var) }
    }

    pub fn constant(var: &str, degree: usize, c: Rational) -> Self {
        let mut s = Self::zero(var, degree);
        s.coeffs[0] = c;
        s
    }

    /// The series variable itself (zero when `degree == 0`).
    pub fn variable(var: &str, degree: usize) -> Self {
        let mut s = Self::zero(var, degree);
        if degree >= 1 {
            s.coeffs[1] = Rational::ONE;
        }
        s
    }

    /// Builds from coefficients, padding with zeros or truncating to `degree`.
    pub fn from_coeffs(var: &str, degree: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut c: Vec<Rational> = coeffs.into_iter().take(degree + 1).collect();
        c.resize(degree + 1, Rational::ZERO);
        Self { coeffs: c, var: Arc::from(var) }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ScalarError> {
        if self.var != other.var {
            return Err(ScalarError::Config(format!(
                "series variables differ: {} vs {}",
                self.var, other.var
            )));
        }
        if self.degree() != other.degree() {
            return Err(ScalarError::Config(format!(
                "truncation degrees differ: {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs, var: self.var.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs, var: self.var.clone() })
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), var: self.var.clone() }
    }

    /// Truncated Cauchy product: coefficient `k` is `sum_{i<=k} a_i b_{k-i}`.
    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_compatible(other)?;
        let n = self.degree();
        let mut out = vec![Rational::ZERO; n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out, var: self.var.clone() })
    }

    /// Truncated quotient `r` with `r * other == self` up to degree `N`.
    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_compatible(other)?;
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(ScalarError::NonInvertibleSeries);
        }
        let n = self.degree();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                let b = &other.coeffs[i];
                if !b.is_zero() {
                    acc -= b * &out[k - i];
                }
            }
            out.push(acc / b0);
        }
        Ok(Self { coeffs: out, var: self.var.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The constant term if every other coefficient vanishes.
    pub fn as_constant(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::ZERO;
            let mag = render_rational(&c.clone().abs());
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let term = match (k, mag.as_str()) {
                (0, m) => m.to_string(),
                (1, "1") => self.var.to_string(),
                (1, m) => format!("{m}*{}", self.var),
                (k, "1") => format!("{}^{k}", self.var),
                (k, m) => format!("{m}*{}^{k}", self.var),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Truncated power series over the rationals in a fixed variable and degree.
///
/// Elements built by a different `SeriesField` are a programming error; the
/// checked operations live on [`TruncatedSeries`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesField {
    var: Arc<str>,
    degree: usize,
}

impl SeriesField {
    pub fn new(var: &str, degree: usize) -> Self {
        Self { var: Arc::from(var), degree }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variable(&self) -> TruncatedSeries {
        TruncatedSeries::variable(&self.var, self.degree)
    }

    pub fn from_coeffs(&self, coeffs: impl IntoIterator<Item = Rational>) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(&self.var, self.degree, coeffs)
    }
}

fn expect_compatible<T>(r: Result<T, ScalarError>) -> T {
    r.unwrap_or_else(|e| panic!("series operands from different fields: {e}"))
}

impl Field for SeriesField {
    type Elem = TruncatedSeries;

    fn name(&self) -> String {
        format!("series-{}-{}", self.var, self.degree)
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn is_formal(&self) -> bool {
        true
    }

    fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(&self.var, self.degree)
    }

    fn one(&self) -> TruncatedSeries {
        TruncatedSeries::constant(&self.var, self.degree, Rational::ONE)
    }

    fn from_rational(&self, r: &Rational) -> TruncatedSeries {
        TruncatedSeries::constant(&self.var, self.degree, r.clone())
    }

    fn add(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        expect_compatible(a.add(b))
    }

    fn sub(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        expect_compatible(a.sub(b))
    }

    fn mul(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        expect_compatible(a.mul(b))
    }

    fn neg(&self, a: &TruncatedSeries) -> TruncatedSeries {
        a.neg()
    }

    fn div(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, ScalarError> {
        match a.div(b) {
            Err(ScalarError::NonInvertibleSeries) if b.is_zero() => Err(ScalarError::DivisionByZero),
            r => r,
        }
    }

    fn is_zero(&self, a: &TruncatedSeries) -> bool {
        a.is_zero()
    }

    fn magnitude(&self, a: &TruncatedSeries) -> f64 {
        a.coeffs.iter().map(|c| rational_to_f64(c).abs()).fold(0.0, f64::max)
    }

    fn close_to(&self, a: &TruncatedSeries, b: &TruncatedSeries, _eps: f64) -> bool {
        a == b
    }

    fn as_rational(&self, a: &TruncatedSeries) -> Option<Rational> {
        a.as_constant().cloned()
    }

    fn render(&self, a: &TruncatedSeries) -> String {
        a.to_string()
    }

    fn render_abs_diff(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> String {
        let d = self.sub(a, b);
        let abs = TruncatedSeries {
            coeffs: d.coeffs.into_iter().map(|c| c.abs()).collect(),
            var: d.var,
        };
        abs.to_string()
    }

    /// A rational literal, or the variable name itself.
    fn parse(&self, text: &str) -> Result<TruncatedSeries, ScalarError> {
        if text.trim() == &*self.var {
            return Ok(self.variable());
        }
        Ok(self.from_rational(&super::parse_rational(text)?))
    }
}
