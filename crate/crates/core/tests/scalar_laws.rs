mod common;

use cfrac_core::scalar::{parse_rational, Field, FloatField, Rational, RationalField, SeriesField};
use common::{nonzero_rational, small_rational};
use dashu::base::Abs;
use proptest::prelude::*;

fn wide_rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=1_000_000).prop_map(|(n, d)| common::ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_laws(a in wide_rational(), b in wide_rational(), c in wide_rational()) {
        let f = RationalField;
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
        if !f.is_zero(&b) {
            prop_assert_eq!(f.mul(&f.div(&a, &b).unwrap(), &b), a);
        }
    }

    #[test]
    fn rational_render_parse_round_trip(a in wide_rational()) {
        let f = RationalField;
        prop_assert_eq!(f.parse(&f.render(&a)).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_div_then_mul_is_identity(
        a in proptest::collection::vec(small_rational(), 9),
        b0 in nonzero_rational(),
        b in proptest::collection::vec(small_rational(), 8),
    ) {
        let s = SeriesField::new("z", 8);
        let num = s.from_coeffs(a);
        let den = s.from_coeffs(std::iter::once(b0).chain(b));
        let q = s.div(&num, &den).unwrap();
        prop_assert_eq!(s.mul(&q, &den), num);
    }

    #[test]
    fn float_multiply_rounding_bound(x in wide_rational(), y in wide_rational(), bits in 53usize..=256) {
        let f = FloatField::new(bits);
        let (fx, fy) = (f.from_rational(&x), f.from_rational(&y));
        let exact = f.as_rational(&fx).unwrap() * f.as_rational(&fy).unwrap();
        let got = f.as_rational(&f.mul(&fx, &fy)).unwrap();
        if exact != Rational::ZERO {
            let rel = ((got - &exact) / &exact).abs();
            let bound = Rational::from_parts(1.into(), dashu::integer::UBig::ONE << (bits - 1));
            prop_assert!(rel <= bound);
        }
    }

    #[test]
    fn float_render_round_trip(x in wide_rational()) {
        let f = FloatField::default();
        let v = f.from_rational(&x);
        prop_assert_eq!(f.parse(&f.render(&v)).unwrap(), v);
    }
}

#[test]
fn series_mixing_degrees_is_rejected() {
    let a = SeriesField::new("z", 4).variable();
    let b = SeriesField::new("z", 5).variable();
    assert!(a.mul(&b).is_err());
    assert!(parse_rational("1/0").is_err());
}
