#![allow(dead_code)]

use cfrac_core::coeffspec::CoeffSeq;
use cfrac_core::scalar::{parse_rational, Rational, RationalField};
use proptest::prelude::*;

pub fn r(t: &str) -> Rational {
    parse_rational(t).unwrap()
}

pub fn ratio(n: i64, d: i64) -> Rational {
    r(&format!("{n}/{d}"))
}

/// Rationals with numerator in [-9, 9] and denominator in [1, 9].
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=9).prop_map(|(n, d)| ratio(n, d))
}

/// A coefficient sequence of the given length with every `b_m` nonzero.
pub fn coeff_seq(len: usize) -> impl Strategy<Value = CoeffSeq<RationalField>> {
    (
        proptest::collection::vec(small_rational(), len),
        proptest::collection::vec(nonzero_rational(), len),
    )
        .prop_map(|(a, b)| CoeffSeq::from_vecs(RationalField, a, b))
}
