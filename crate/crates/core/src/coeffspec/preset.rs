use std::fmt;
use std::str::FromStr;

use dashu::integer::UBig;

use super::expr::{parse_expr, Binding, Bindings};
use super::seq::{CoeffError, CoeffSeq, Rule};
use crate::scalar::Field;

/// Named coefficient presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `a_0 = c`, `a_m = z`, `b_m = c + m`; ratio of `0F1` functions.
    App1,
    /// `a_0 = 1`, `a_m = z q^m`, `b_m = 1`; Rogers-Ramanujan fraction.
    App2,
    /// `a_0 = 1`, `a_m = z`, `b_m = q^(e_m)` with the alternating exponent.
    App3Paper,
    /// `a_0 = 1`, `a_m = z q^(m-1)`, `b_m = q^m`.
    App3Canonical,
    /// `a_m = a`, `b_m = b`.
    Constant,
    /// Explicit values from parameters `a_0, b_0, a_1, b_1, ...`.
    List,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::App1,
        Preset::App2,
        Preset::App3Paper,
        Preset::App3Canonical,
        Preset::Constant,
        Preset::List,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::App1 => "app1",
            Preset::App2 => "app2",
            Preset::App3Paper => "app3-paper",
            Preset::App3Canonical => "app3-canonical",
            Preset::Constant => "constant",
            Preset::List => "list",
        }
    }

    /// Parameters the preset requires.
    pub fn required_params(self) -> &'static [&'static str] {
        match self {
            Preset::App1 => &["c", "z"],
            Preset::App2 | Preset::App3Canonical => &["q", "z"],
            Preset::App3Paper => &["q", "z", "c"],
            Preset::Constant => &["a", "b"],
            Preset::List => &[],
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, CoeffError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CoeffError::UnknownPreset(s.to_string()))
    }
}

fn expr<E>(text: &str) -> Rule<E> {
    Rule::Expr(parse_expr(text).expect("preset rule parses"))
}

fn require<'a, E>(params: &'a Bindings<E>, name: &'static str) -> Result<&'a Binding<E>, CoeffError> {
    params.get(name).ok_or(CoeffError::MissingParam(name))
}

/// Builds a preset coefficient sequence.
pub fn preset_coeffs<F: Field>(field: F, preset: Preset, params: Bindings<F::Elem>) -> Result<CoeffSeq<F>, CoeffError> {
    for name in preset.required_params() {
        require(&params, name)?;
    }
    let one = field.one();
    match preset {
        Preset::App1 => {
            let c = require(&params, "c")?.value.clone();
            CoeffSeq::new(field, expr("z"), expr("m+c"), params, Some(c), None)
        }
        Preset::App2 => CoeffSeq::new(field, expr("z*q^m"), expr("1"), params, Some(one), None),
        Preset::App3Canonical => CoeffSeq::new(
            field,
            expr("z*q^(m-1)"),
            expr("q^m"),
            params,
            Some(one.clone()),
            Some(one),
        ),
        Preset::App3Paper => {
            let c = require(&params, "c")?;
            let offset = c
                .exact
                .as_ref()
                .filter(|r| r.denominator() == &UBig::ONE)
                .and_then(|r| i64::try_from(r.numerator().clone()).ok())
                .ok_or_else(|| CoeffError::InvalidParam {
                    name: "c".into(),
                    reason: "app3-paper needs an exact integer c".into(),
                })?;
            CoeffSeq::new(
                field,
                expr("z"),
                Rule::AlternatingPower { base: "q".into(), offset },
                params,
                Some(one),
                None,
            )
        }
        Preset::Constant => CoeffSeq::new(field, expr("a"), expr("b"), params, None, None),
        Preset::List => {
            let mut a = Vec::new();
            let mut b = Vec::new();
            loop {
                let m = a.len();
                match (params.get(&format!("a_{m}")), params.get(&format!("b_{m}"))) {
                    (Some(x), Some(y)) => {
                        a.push(x.value.clone());
                        b.push(y.value.clone());
                    }
                    (None, None) => break,
                    _ => {
                        return Err(CoeffError::InvalidParam {
                            name: format!("a_{m}/b_{m}"),
                            reason: "list entries come in pairs".into(),
                        })
                    }
                }
            }
            if a.is_empty() {
                return Err(CoeffError::MissingParam("a_0"));
            }
            Ok(CoeffSeq::from_vecs(field, a, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffspec::seq::bind_params;
    use crate::scalar::{parse_rational, Rational, RationalField};

    fn r(t: &str) -> Rational {
        parse_rational(t).unwrap()
    }

    fn build(p: Preset, pairs: &[(&str, &str)]) -> Result<CoeffSeq<RationalField>, CoeffError> {
        let owned: Vec<(String, String)> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        preset_coeffs(RationalField, p, bind_params(&RationalField, &owned).unwrap())
    }

    fn pow(q: &Rational, e: i64) -> Rational {
        RationalField.powi(q, e).unwrap()
    }

    #[test]
    fn app3_paper_exponents() {
        let s = build(Preset::App3Paper, &[("q", "2"), ("z", "1"), ("c", "0")]).unwrap();
        let b = s.prefix(6).unwrap().b;
        let q = r("2");
        let expect: Vec<Rational> = [0, 1, 1, 2, 2, 3, 3].iter().map(|&e| pow(&q, e)).collect();
        assert_eq!(b, expect);
    }

    #[test]
    fn app1_with_zero_argument() {
        let s = build(Preset::App1, &[("c", "2"), ("z", "0")]).unwrap();
        let c = s.prefix(3).unwrap();
        assert_eq!(c.a, vec![r("2"), r("0"), r("0"), r("0")]);
        assert_eq!(c.b, vec![r("2"), r("3"), r("4"), r("5")]);
    }

    #[test]
    fn app2_numerators() {
        let s = build(Preset::App2, &[("q", "1/2"), ("z", "1")]).unwrap();
        assert_eq!(s.prefix(3).unwrap().a, vec![r("1"), r("1/2"), r("1/4"), r("1/8")]);
    }

    #[test]
    fn first_ten_coefficients_match_hand_formulas() {
        let (q, z, c) = (r("3/2"), r("-2/5"), r("7/3"));
        let app1 = build(Preset::App1, &[("c", "7/3"), ("z", "-2/5")]).unwrap().prefix(9).unwrap();
        let app2 = build(Preset::App2, &[("q", "3/2"), ("z", "-2/5")]).unwrap().prefix(9).unwrap();
        let app3p = build(Preset::App3Paper, &[("q", "3/2"), ("z", "-2/5"), ("c", "1")]).unwrap().prefix(9).unwrap();
        let app3c = build(Preset::App3Canonical, &[("q", "3/2"), ("z", "-2/5")]).unwrap().prefix(9).unwrap();
        for m in 0..10usize {
            let mr = Rational::from(m);
            let head = m == 0;
            assert_eq!(app1.a[m], if head { c.clone() } else { z.clone() });
            assert_eq!(app1.b[m], &c + &mr);
            assert_eq!(app2.a[m], if head { r("1") } else { &z * pow(&q, m as i64) });
            assert_eq!(app2.b[m], r("1"));
            // e_m = (-1)^m (1 + sum_{k<=m} (-1)^k k), summed directly here
            let s: i64 = (0..=m as i64).map(|k| if k % 2 == 0 { k } else { -k }).sum();
            let e = if m % 2 == 0 { 1 + s } else { -(1 + s) };
            assert_eq!(app3p.a[m], if head { r("1") } else { z.clone() });
            assert_eq!(app3p.b[m], pow(&q, e));
            assert_eq!(app3c.a[m], if head { r("1") } else { &z * pow(&q, m as i64 - 1) });
            assert_eq!(app3c.b[m], pow(&q, m as i64));
        }
    }

    #[test]
    fn missing_and_unknown() {
        assert_eq!(build(Preset::App2, &[("q", "1/2")]).unwrap_err(), CoeffError::MissingParam("z"));
        assert_eq!("app9".parse::<Preset>().unwrap_err(), CoeffError::UnknownPreset("app9".into()));
        assert!(matches!(
            build(Preset::App3Paper, &[("q", "2"), ("z", "1"), ("c", "1/2")]),
            Err(CoeffError::InvalidParam { .. })
        ));
    }

    #[test]
    fn constant_and_list_presets() {
        let s = build(Preset::Constant, &[("a", "2"), ("b", "-1")]).unwrap();
        assert_eq!(s.prefix(2).unwrap().b, vec![r("-1"); 3]);
        let s = build(Preset::List, &[("a_0", "5"), ("b_0", "2"), ("a_1", "1"), ("b_1", "3")]).unwrap();
        let c = s.prefix(2).unwrap();
        assert_eq!(c.a, vec![r("5"), r("1"), r("0")]);
        assert_eq!(c.b, vec![r("2"), r("3"), r("1")]);
        assert!(build(Preset::List, &[("a_0", "5")]).is_err());
    }

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
    }
}
