mod common;

use cfrac_core::coeffspec::{parse_expr, Expr, ParseError};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..=50).prop_map(|n| Expr::Num(common::ratio(n, 1))),
        (0i64..=50, 1i64..=12).prop_map(|(n, d)| Expr::Num(common::ratio(n, d))),
        (0u32..1000).prop_map(|n| Expr::Num(common::r(&format!("{}.{:03}", n / 100, n % 100)))),
        prop::sample::select(vec!["m", "q", "z", "c", "alpha", "x_1"]).prop_map(Expr::var),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Pow(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn render_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn garbage_never_panics(text in "[0-9a-z+*/^(). -]{0,24}") {
        let _ = parse_expr(&text);
    }
}

#[test]
fn precedence_and_errors() {
    assert_eq!(parse_expr("z*q^(m-1)").unwrap().to_string(), "(z * (q^(m - 1)))");
    assert_eq!(parse_expr("-q^2").unwrap().to_string(), "(-(q^2))");
    assert_eq!(parse_expr("2^3^2").unwrap().to_string(), "(2^(3^2))");
    assert_eq!(parse_expr("a-b-c").unwrap().to_string(), "((a - b) - c)");
    assert_eq!(parse_expr("(m+").unwrap_err(), ParseError::Syntax { offset: 3, expected: vec!["expression"] });
    assert!(matches!(parse_expr("m $ 1"), Err(ParseError::UnknownChar { offset: 2, ch: '$' })));
}
