use num_bigint::BigInt;
use proptest::prelude::*;
use qdissect::qfunctions::{sum_expand, Quadratic, SumSpec};
use qdissect::series::{from_json, to_json};
use qdissect::{ParamMonomial, Poly, Series};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-2i32..=2, 0u32..=2, -3i64..=3), 0..3)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(a, b, c)| (a, b, BigInt::from(c)))))
}

fn series(denom: u32, prec: i64) -> impl Strategy<Value = Series> {
    prop::collection::vec((0..=prec, poly()), 0..8)
        .prop_map(move |ts| Series::from_terms(denom, prec, ts).expect("keys within precision"))
}

/// Three series sharing a denominator, with independent precisions.
fn triple() -> impl Strategy<Value = (Series, Series, Series)> {
    (1u32..=3, 0i64..=10, 0i64..=10, 0i64..=10)
        .prop_flat_map(|(d, p, q, r)| (series(d, p), series(d, q), series(d, r)))
}

fn unit_series() -> impl Strategy<Value = Series> {
    (1u32..=3, 1i64..=15, prop::bool::ANY).prop_flat_map(|(d, p, neg)| {
        series(d, p).prop_map(move |x| {
            let c = if neg { -1 } else { 1 };
            let tail = x.filter_terms(|e, _| e > 0);
            &tail + &Series::from_terms(d, p, [(0, Poly::constant(BigInt::from(c)))]).unwrap()
        })
    })
}

fn at(x: &Series, p: i64) -> Series {
    x.truncate(p)
}

fn spec() -> impl Strategy<Value = SumSpec> {
    (
        1u32..=3,
        1i64..=3,
        0i64..=3,
        -1i64..=1,
        0i64..=1,
        prop::bool::ANY,
    )
        .prop_map(|(d, c2, c1, a, b, with_b)| {
            let base = ParamMonomial::new(1, 0, u32::from(with_b), i64::from(d));
            SumSpec::new(d, Quadratic::new(c2, c1, 0))
                .a(a, 0)
                .b(b, 0)
                .sign(1, 0)
                .over(base, i64::from(d), 1, 0)
        })
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative((x, y, z) in triple()) {
        let p = x.prec().min(y.prec()).min(z.prec());
        prop_assert_eq!(at(&(&(&x + &y) + &z), p), at(&(&x + &(&y + &z)), p));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn multiplication_is_associative_commutative_and_distributive((x, y, z) in triple()) {
        let xy_z = &(&x * &y) * &z;
        let x_yz = &x * &(&y * &z);
        let p = xy_z.prec().min(x_yz.prec());
        prop_assert_eq!(at(&xy_z, p), at(&x_yz, p));
        prop_assert_eq!(&x * &y, &y * &x);
        let lhs = &x * &(&y + &z);
        let rhs = &(&x * &y) + &(&x * &z);
        let p = lhs.prec().min(rhs.prec());
        prop_assert_eq!(at(&lhs, p), at(&rhs, p));
    }

    #[test]
    fn unit_series_invert_exactly(x in unit_series()) {
        let inv = x.invert(x.prec()).unwrap();
        let one = Series::one(x.denom(), x.prec());
        prop_assert_eq!(&x * &inv, one);
        prop_assert_eq!(inv.invert(x.prec()).unwrap(), x);
    }

    #[test]
    fn rescale_is_a_ring_homomorphism((x, y, _z) in triple(), k in 1u32..=4) {
        // the precision rules need not commute with rescaling, so compare at the shared precision
        let lhs = (&x * &y).rescale(k);
        let rhs = &x.rescale(k) * &y.rescale(k);
        let p = lhs.prec().min(rhs.prec());
        prop_assert_eq!(at(&lhs, p), at(&rhs, p));
        prop_assert_eq!((&x + &y).rescale(k), &x.rescale(k) + &y.rescale(k));
    }

    #[test]
    fn products_at_higher_precision_truncate_to_lower((x, y, _z) in triple(), cut in 0i64..=10) {
        let low = &at(&x, cut.min(x.prec())) * &at(&y, cut.min(y.prec()));
        let high = &x * &y;
        prop_assert!(low.prec() <= high.prec());
        prop_assert_eq!(at(&high, low.prec()), low);
    }

    #[test]
    fn sums_at_higher_precision_truncate_to_lower(s in spec(), p in 0i64..=30, extra in 0i64..=20) {
        let low: Series = sum_expand(&s, p).unwrap();
        let high: Series = sum_expand(&s, p + extra).unwrap();
        prop_assert_eq!(at(&high, p), low);
    }

    #[test]
    fn canonical_json_round_trips((x, _y, _z) in triple()) {
        let text = to_json(&x);
        let back: Series = from_json(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(to_json(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn fifty_random_unit_series_invert(x in unit_series()) {
        prop_assert_eq!(x.try_mul(&x.invert(x.prec()).unwrap()).unwrap(), Series::one(x.denom(), x.prec()));
    }
}
