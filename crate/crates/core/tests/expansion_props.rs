mod common;

use cfrac_core::contfrac::convergents;
use cfrac_core::expansion::{g_weights, phi_by_depth, phi_dp, phi_enumerate, reconstruct, series_ratio_approx, GWeights};
use cfrac_core::recurrence::iterate;
use cfrac_core::scalar::{Field, Rational, RationalField};
use cfrac_core::Error;
use common::{coeff_seq, small_rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g_and_range() -> impl Strategy<Value = (GWeights<Rational>, usize, usize)> {
    (1usize..=3, 0usize..=16).prop_flat_map(|(start, size)| {
        let end = start + size + 1;
        proptest::collection::vec(small_rational(), end.saturating_sub(2))
            .prop_map(move |g| (GWeights::from_vec(g), start, end))
    })
}

fn phi1(coeffs: &cfrac_core::coeffspec::CoeffSeq<RationalField>, n: usize) -> Rational {
    let g = if n >= 3 { g_weights(coeffs, n - 2).unwrap() } else { GWeights::from_vec(Vec::new()) };
    phi_dp(&RationalField, &g, 1, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dp_matches_enumeration((g, start, end) in g_and_range()) {
        let f = RationalField;
        prop_assert_eq!(phi_dp(&f, &g, start, end).unwrap(), phi_enumerate(&f, &g, start, end).unwrap());
    }

    #[test]
    fn depth_layers_sum_to_total((g, start, end) in g_and_range(), extra in 0usize..3) {
        let f = RationalField;
        let size = (end - 1).saturating_sub(start);
        let table = phi_by_depth(&f, &g, start, end, size.div_ceil(2) + extra).unwrap();
        let sum = table.by_depth.iter().fold(f.zero(), |acc, s| f.add(&acc, s));
        prop_assert_eq!(&sum, &table.total);
        prop_assert!(table.is_complete());
        prop_assert_eq!(table.set_size(), size);
    }

    #[test]
    fn depth_one_is_plain_sum((g, start, end) in g_and_range()) {
        let f = RationalField;
        let table = phi_by_depth(&f, &g, start, end, 1).unwrap();
        let plain = (start..end.saturating_sub(1)).fold(f.zero(), |acc, i| f.add(&acc, g.get(i)));
        prop_assert_eq!(&table.by_depth[1], &plain);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reconstruction_equals_iteration(c in coeff_seq(31), x0 in small_rational(), x1 in small_rational()) {
        let s = iterate(&c, x0.clone(), x1.clone(), 30).unwrap();
        for n in 2..=30 {
            prop_assert_eq!(&reconstruct(&c, &x0, &x1, n).unwrap(), &s.values[n], "n = {}", n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_ratio_is_convergent(c in coeff_seq(28)) {
        for (m, cv) in convergents(&c, 25).unwrap().iter().enumerate() {
            match (&cv.value, series_ratio_approx(&c, m + 2)) {
                (Some(v), Ok(s)) => prop_assert_eq!(v, &s, "m = {}", m),
                (None, Err(Error::Degenerate { n })) => prop_assert_eq!(n, m + 2),
                (v, s) => prop_assert!(false, "m = {}: convergent {:?}, series {:?}", m, v, s),
            }
        }
    }

    #[test]
    fn convergent_denominator_is_scaled_phi(c in coeff_seq(18)) {
        let f = RationalField;
        let mut prod = f.one();
        for (m, cv) in convergents(&c, 15).unwrap().iter().enumerate() {
            prod = f.mul(&prod, &c.b(m).unwrap());
            prop_assert_eq!(&cv.q, &f.mul(&prod, &phi1(&c, m + 2)), "m = {}", m);
        }
    }
}

/// Brute-force confirmation that the series ratio at `n` matches the
/// convergent at `n - 2` and no other offset.
#[test]
fn bridge_offset_is_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut holds = [true; 5];
    for _ in 0..20 {
        let mut draw = |nonzero: bool| loop {
            let n = rng.gen_range(-9i64..=9);
            if !(nonzero && n == 0) {
                break common::ratio(n, rng.gen_range(1..=9));
            }
        };
        let a: Vec<_> = (0..12).map(|_| draw(true)).collect();
        let b: Vec<_> = (0..12).map(|_| draw(true)).collect();
        let c = cfrac_core::coeffspec::CoeffSeq::from_vecs(RationalField, a, b);
        let conv = convergents(&c, 8).unwrap();
        for (offset, ok) in holds.iter_mut().enumerate() {
            for (m, cv) in conv.iter().enumerate().take(6) {
                let n = m + offset;
                if n < 2 {
                    continue;
                }
                let same = match (&cv.value, series_ratio_approx(&c, n)) {
                    (Some(v), Ok(s)) => v == &s,
                    (None, Err(Error::Degenerate { .. })) => true,
                    _ => false,
                };
                *ok &= same;
            }
        }
    }
    assert_eq!(holds, [false, false, true, false, false]);
}

#[test]
fn denominator_identity_by_hand() {
    // Q_1 = b_0 b_1 + a_1 and Phi_{1,3} = 1 + g_1 with g_1 = a_1/(b_0 b_1)
    let c = cfrac_core::coeffspec::CoeffSeq::from_vecs(
        RationalField,
        vec![common::r("2"), common::r("3"), common::r("-1/2")],
        vec![common::r("5"), common::r("7"), common::r("1/3")],
    );
    let conv = convergents(&c, 2).unwrap();
    assert_eq!(conv[1].q, common::r("38"));
    assert_eq!(phi1(&c, 3), common::r("38/35"));
}
