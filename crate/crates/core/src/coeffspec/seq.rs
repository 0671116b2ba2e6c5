use std::fmt;

use super::expr::{parse_expr, Binding, Bindings, EvalError, Expr, ParseError};
use crate::scalar::{parse_rational, Field, Rational, ScalarError};

/// Which coefficient sequence an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    A,
    B,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::A => "a",
            Which::B => "b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoeffError {
    #[error("cannot parse rule for {which}: {source}")]
    Parse { which: Which, source: ParseError },
    #[error("evaluating {which}_{index}: {source}")]
    Eval { which: Which, index: usize, source: EvalError },
    #[error("identifier {0:?} is not bound by any parameter")]
    Unbound(String),
    #[error("missing parameter {0:?}")]
    MissingParam(&'static str),
    #[error("invalid parameter {name:?}: {reason}")]
    InvalidParam { name: String, reason: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("coefficient list line {line}: {reason}")]
    List { line: usize, reason: String },
}

impl CoeffError {
    /// The index `m` at which evaluation failed, if any.
    pub fn index(&self) -> Option<usize> {
        match self {
            CoeffError::Eval { index, .. } => Some(*index),
            _ => None,
        }
    }
}

/// How one of the two sequences is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule<E> {
    /// An expression in `m` and the parameters.
    Expr(Expr),
    /// Explicit values; indices past the end take `tail`.
    List { values: Vec<E>, tail: E },
    /// `base^(e_m)` with `e_m = (-1)^m (offset + sum_{k=0..m} (-1)^k k)`.
    AlternatingPower { base: String, offset: i64 },
}

/// Exponent `e_m = (-1)^m (offset + sum_{k=0..m} (-1)^k k)` by the exact
/// integer recurrence `s_m = s_{m-1} + (-1)^m m`.
pub fn alternating_exponent(offset: i64, m: usize) -> i64 {
    let mut s: i64 = 0;
    for k in 1..=m as i64 {
        if k % 2 == 0 {
            s += k;
        } else {
            s -= k;
        }
    }
    let inner = offset + s;
    if m.is_multiple_of(2) {
        inner
    } else {
        -inner
    }
}

/// The coefficient pair `(a_m, b_m)`, `m >= 0`, of a recurrence
/// `x_{m+2} = b_m x_{m+1} + a_m x_m` and of the continued fraction
/// `a_0/(b_0 + a_1/(b_1 + ...))`.
///
/// Coefficients are evaluated on demand; zero `b_m` is only reported by the
/// operations that divide by it.
#[derive(Debug, Clone)]
pub struct CoeffSeq<F: Field> {
    field: F,
    a: Rule<F::Elem>,
    b: Rule<F::Elem>,
    params: Bindings<F::Elem>,
    a0: Option<F::Elem>,
    b0: Option<F::Elem>,
    /// Equivalence factors `r_0, r_1, ...`; missing entries are 1.
    scale: Vec<F::Elem>,
}

/// First `n + 1` coefficients of each sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<E> {
    pub a: Vec<E>,
    pub b: Vec<E>,
}

impl<F: Field> CoeffSeq<F> {
    /// Builds from rules. Every identifier other than `m` must be bound.
    pub fn new(
        field: F,
        a: Rule<F::Elem>,
        b: Rule<F::Elem>,
        params: Bindings<F::Elem>,
        a0: Option<F::Elem>,
        b0: Option<F::Elem>,
    ) -> Result<Self, CoeffError> {
        for rule in [&a, &b] {
            let idents = match rule {
                Rule::Expr(e) => e.identifiers(),
                Rule::AlternatingPower { base, .. } => vec![base.clone()],
                Rule::List { .. } => vec![],
            };
            if let Some(free) = idents.into_iter().find(|v| v != "m" && !params.contains_key(v)) {
                return Err(CoeffError::Unbound(free));
            }
        }
        Ok(Self { field, a, b, params, a0, b0, scale: Vec::new() })
    }

    /// Explicit finite sequences. Past the end the fraction terminates
    /// (`a_m = 0`, `b_m = 1`).
    pub fn from_vecs(field: F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> Self {
        let (zero, one) = (field.zero(), field.one());
        Self {
            a: Rule::List { values: a, tail: zero },
            b: Rule::List { values: b, tail: one },
            params: Bindings::new(),
            a0: None,
            b0: None,
            scale: Vec::new(),
            field,
        }
    }

    /// Constant sequences `a_m = a`, `b_m = b`.
    pub fn constant(field: F, a: F::Elem, b: F::Elem) -> Self {
        Self {
            a: Rule::List { values: Vec::new(), tail: a },
            b: Rule::List { values: Vec::new(), tail: b },
            params: Bindings::new(),
            a0: None,
            b0: None,
            scale: Vec::new(),
            field,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn params(&self) -> &Bindings<F::Elem> {
        &self.params
    }

    /// Replaces `a_0` and/or `b_0`.
    pub fn with_overrides(mut self, a0: Option<F::Elem>, b0: Option<F::Elem>) -> Self {
        if a0.is_some() {
            self.a0 = a0;
        }
        if b0.is_some() {
            self.b0 = b0;
        }
        self
    }

    /// Equivalence-transformed copy: `a'_m = r_m r_{m-1} a_m` (`r_{-1} = 1`),
    /// `b'_m = r_m b_m`. Factors past the end of `r` are 1. Stacks with any
    /// existing transform.
    pub(crate) fn with_scale(&self, r: &[F::Elem]) -> Self {
        let mut out = self.clone();
        let f = &self.field;
        let len = r.len().max(self.scale.len());
        out.scale = (0..len)
            .map(|m| match (self.scale.get(m), r.get(m)) {
                (Some(x), Some(y)) => f.mul(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        out
    }

    fn factor(&self, m: usize) -> Option<&F::Elem> {
        self.scale.get(m)
    }

    fn eval_rule(&self, which: Which, m: usize) -> Result<F::Elem, CoeffError> {
        let rule = match which {
            Which::A => &self.a,
            Which::B => &self.b,
        };
        let wrap = |source: EvalError| CoeffError::Eval { which, index: m, source };
        match rule {
            Rule::List { values, tail } => Ok(values.get(m).unwrap_or(tail).clone()),
            Rule::Expr(e) => {
                let mut b = self.params.clone();
                let mr = Rational::from(m);
                b.insert("m".into(), Binding::new(self.field.from_rational(&mr), Some(mr)));
                e.eval(&self.field, &b).map_err(wrap)
            }
            Rule::AlternatingPower { base, offset } => {
                let q = &self.params.get(base).ok_or_else(|| CoeffError::Unbound(base.clone()))?.value;
                self.field.powi(q, alternating_exponent(*offset, m)).map_err(|e| wrap(e.into()))
            }
        }
    }

    fn raw(&self, which: Which, m: usize) -> Result<F::Elem, CoeffError> {
        let head = match which {
            Which::A => &self.a0,
            Which::B => &self.b0,
        };
        match (m, head) {
            (0, Some(v)) => Ok(v.clone()),
            _ => self.eval_rule(which, m),
        }
    }

    /// `a_m`.
    pub fn a(&self, m: usize) -> Result<F::Elem, CoeffError> {
        let mut v = self.raw(Which::A, m)?;
        let f = &self.field;
        if let Some(r) = self.factor(m) {
            v = f.mul(&v, r);
        }
        if m > 0 {
            if let Some(r) = self.factor(m - 1) {
                v = f.mul(&v, r);
            }
        }
        Ok(v)
    }

    /// `b_m`.
    pub fn b(&self, m: usize) -> Result<F::Elem, CoeffError> {
        let v = self.raw(Which::B, m)?;
        Ok(match self.factor(m) {
            Some(r) => self.field.mul(&v, r),
            None => v,
        })
    }

    /// `a_0..=a_n` and `b_0..=b_n`.
    pub fn prefix(&self, n: usize) -> Result<Coefficients<F::Elem>, CoeffError> {
        let a = (0..=n).map(|m| self.a(m)).collect::<Result<_, _>>()?;
        let b = (0..=n).map(|m| self.b(m)).collect::<Result<_, _>>()?;
        Ok(Coefficients { a, b })
    }
}

/// Parameter bindings from `name = text` pairs. Each value is parsed in the
/// field; its exact rational value is kept when the text is a rational or
/// decimal literal.
pub fn bind_params<F: Field>(field: &F, pairs: &[(String, String)]) -> Result<Bindings<F::Elem>, CoeffError> {
    pairs
        .iter()
        .map(|(name, text)| {
            let value = field.parse(text).map_err(|e| CoeffError::InvalidParam {
                name: name.clone(),
                reason: e.to_string(),
            })?;
            let exact = parse_rational(text).ok();
            Ok((name.clone(), Binding::new(value, exact)))
        })
        .collect()
}

/// Builds a coefficient sequence from rule texts, parameters and optional
/// index-0 overrides.
pub fn build_coeff_seq<F: Field>(
    field: F,
    a_rule: &str,
    b_rule: &str,
    params: Bindings<F::Elem>,
    a0: Option<F::Elem>,
    b0: Option<F::Elem>,
) -> Result<CoeffSeq<F>, CoeffError> {
    let a = parse_expr(a_rule).map_err(|source| CoeffError::Parse { which: Which::A, source })?;
    let b = parse_expr(b_rule).map_err(|source| CoeffError::Parse { which: Which::B, source })?;
    CoeffSeq::new(field, Rule::Expr(a), Rule::Expr(b), params, a0, b0)
}

/// Parses the explicit-list format: one `a_m b_m` pair per line, line `m`
/// (0-based) holding index `m`. Values are rationals (`3/4`) or decimals.
/// Trailing blank lines are ignored.
pub fn parse_coeff_list(text: &str) -> Result<Vec<(Rational, Rational)>, CoeffError> {
    let lines: Vec<&str> = text.lines().collect();
    let used = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |p| p + 1);
    lines[..used]
        .iter()
        .enumerate()
        .map(|(m, line)| {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |reason: String| CoeffError::List { line: m, reason };
            if fields.len() != 2 {
                return Err(err(format!("expected 2 values, found {}", fields.len())));
            }
            let parse = |t: &str| parse_rational(t).map_err(|e: ScalarError| err(e.to_string()));
            Ok((parse(fields[0])?, parse(fields[1])?))
        })
        .collect()
}

/// Coefficient sequence from an explicit list (see [`parse_coeff_list`]).
pub fn coeff_seq_from_list<F: Field>(field: F, pairs: &[(Rational, Rational)]) -> CoeffSeq<F> {
    let a = pairs.iter().map(|(a, _)| field.from_rational(a)).collect();
    let b = pairs.iter().map(|(_, b)| field.from_rational(b)).collect();
    CoeffSeq::from_vecs(field, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalField;

    fn r(t: &str) -> Rational {
        parse_rational(t).unwrap()
    }

    fn params(pairs: &[(&str, &str)]) -> Bindings<Rational> {
        let owned: Vec<(String, String)> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        bind_params(&RationalField, &owned).unwrap()
    }

    #[test]
    fn constant_rules() {
        let s = build_coeff_seq(RationalField, "1", "1", Bindings::new(), None, None).unwrap();
        let c = s.prefix(5).unwrap();
        assert!(c.a.iter().chain(&c.b).all(|x| *x == Rational::ONE));
    }

    #[test]
    fn override_head_of_geometric_numerators() {
        let s = build_coeff_seq(RationalField, "z*q^m", "1", params(&[("q", "1/2"), ("z", "1")]), Some(r("1")), None)
            .unwrap();
        let c = s.prefix(2).unwrap();
        assert_eq!(c.a, vec![r("1"), r("1/2"), r("1/4")]);
        assert_eq!(c.b, vec![r("1"); 3]);
    }

    #[test]
    fn override_head_of_linear_denominators() {
        let s = build_coeff_seq(RationalField, "z", "m+c", params(&[("c", "2"), ("z", "1")]), Some(r("2")), None)
            .unwrap();
        let c = s.prefix(2).unwrap();
        assert_eq!(c.a, vec![r("2"), r("1"), r("1")]);
        assert_eq!(c.b, vec![r("2"), r("3"), r("4")]);
    }

    #[test]
    fn eval_failure_reports_index() {
        let s = build_coeff_seq(RationalField, "1/(m-3)", "1", Bindings::new(), None, None).unwrap();
        let err = s.prefix(5).unwrap_err();
        assert_eq!(err.index(), Some(3));
        assert!(matches!(err, CoeffError::Eval { which: Which::A, source: EvalError::DivisionByZero, .. }));
    }

    #[test]
    fn unbound_and_parse_errors() {
        assert_eq!(
            build_coeff_seq(RationalField, "z", "1", Bindings::new(), None, None).unwrap_err(),
            CoeffError::Unbound("z".into())
        );
        assert!(matches!(
            build_coeff_seq(RationalField, "1", "(m+", Bindings::new(), None, None).unwrap_err(),
            CoeffError::Parse { which: Which::B, .. }
        ));
    }

    #[test]
    fn alternating_exponent_sequence() {
        let e: Vec<i64> = (0..7).map(|m| alternating_exponent(0, m)).collect();
        assert_eq!(e, vec![0, 1, 1, 2, 2, 3, 3]);
        let e: Vec<i64> = (0..4).map(|m| alternating_exponent(2, m)).collect();
        assert_eq!(e, vec![2, -1, 3, 0]);
    }

    #[test]
    fn coefficient_list_format() {
        let pairs = parse_coeff_list("1 2\n3/4 -0.5\n\n").unwrap();
        assert_eq!(pairs, vec![(r("1"), r("2")), (r("3/4"), r("-1/2"))]);
        let s = coeff_seq_from_list(RationalField, &pairs);
        assert_eq!(s.a(1).unwrap(), r("3/4"));
        assert_eq!(s.a(2).unwrap(), Rational::ZERO);
        assert_eq!(s.b(7).unwrap(), Rational::ONE);
        assert!(matches!(parse_coeff_list("1 2\n3\n"), Err(CoeffError::List { line: 1, .. })));
        assert!(matches!(parse_coeff_list("1 x\n"), Err(CoeffError::List { line: 0, .. })));
        assert!(matches!(parse_coeff_list("1 2\n\n3 4\n"), Err(CoeffError::List { line: 1, .. })));
    }

    #[test]
    fn scale_applies_equivalence_factors() {
        let s = CoeffSeq::constant(RationalField, r("1"), r("1"));
        let t = s.with_scale(&[r("1"), r("2"), r("3")]);
        let c = t.prefix(4).unwrap();
        assert_eq!(c.a, vec![r("1"), r("2"), r("6"), r("3"), r("1")]);
        assert_eq!(c.b, vec![r("1"), r("2"), r("3"), r("1"), r("1")]);
    }
}
