use num_bigint::BigInt;
use qdissect::qfunctions::{
    named_series, partial_theta, poch_finite, poch_infinite, sum_expand, theta_full, Quadratic,
    SumSpec, ThetaSide, NAMED_IDS,
};
use qdissect::series::{input_prec_for_shift, substitute, Subst};
use qdissect::{ParamMonomial, Series};

const P: i64 = 80;

fn ints(x: &Series) -> Vec<i64> {
    x.constant_coeffs()
        .expect("no a or b left")
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect()
}

/// `sum z^n / (q)_n` with `z = c a^i b^j q`.
fn euler_first(z: ParamMonomial) -> SumSpec {
    SumSpec::new(1, Quadratic::new(0, 1, 0))
        .a(i64::from(z.a), 0)
        .b(i64::from(z.b), 0)
        .sign(i64::from(z.coeff < 0), 0)
        .over(ParamMonomial::t(1), 1, 1, 0)
}

/// `sum z^n q^(n(n-1)/2) / (q)_n` with `z = c a^i q`.
fn euler_second(z: ParamMonomial) -> SumSpec {
    SumSpec::new(1, Quadratic::new(1, 1, 0).over(2))
        .a(i64::from(z.a), 0)
        .sign(i64::from(z.coeff < 0), 0)
        .over(ParamMonomial::t(1), 1, 1, 0)
}

#[test]
fn euler_reciprocal_product() {
    for z in [
        ParamMonomial::new(1, 0, 0, 1),
        ParamMonomial::new(1, 0, 1, 1),
        ParamMonomial::new(-1, 0, 1, 1),
    ] {
        let lhs: Series = sum_expand(&euler_first(z), P).unwrap();
        let rhs: Series = poch_infinite(1, P, z, 1).unwrap().invert(P).unwrap();
        assert_eq!(lhs, rhs, "z = {z:?}");
    }
}

#[test]
fn euler_product_expansion() {
    // sum z^n q^(n(n-1)/2)/(q)_n = (-z; q)_inf
    for z in [
        ParamMonomial::new(1, 0, 0, 1),
        ParamMonomial::new(-1, 1, 0, 1),
        ParamMonomial::new(-1, -1, 0, 1),
    ] {
        let lhs: Series = sum_expand(&euler_second(z), P).unwrap();
        let rhs: Series = poch_infinite(1, P, z.negated(), 1).unwrap();
        assert_eq!(lhs, rhs, "z = {z:?}");
    }
}

#[test]
fn euler_product_is_the_limit_of_finite_products() {
    let z = ParamMonomial::new(-1, 1, 0, 1);
    let inf: Series = poch_infinite(1, P, z, 1).unwrap();
    // factors past q^P do not change anything below it
    assert_eq!(poch_finite::<BigInt>(1, P, z, 1, P as usize).unwrap(), inf);
    assert_ne!(poch_finite::<BigInt>(1, P, z, 1, 10).unwrap(), inf);
}

#[test]
fn partitions_from_the_inverse_product() {
    // brute-force partition counts by dynamic programming over part sizes
    let mut p = vec![0i64; 41];
    p[0] = 1;
    for part in 1..=40 {
        for n in part..=40 {
            p[n] += p[n - part];
        }
    }
    let inv = poch_infinite::<BigInt>(1, 40, ParamMonomial::t(1), 1)
        .unwrap()
        .invert(40)
        .unwrap();
    assert_eq!(ints(&inv), p);
}

#[test]
fn theta_is_the_sum_of_its_halves() {
    for s in 1..=4 {
        let full: Series = theta_full(s, 60);
        let halves = &partial_theta::<BigInt>(ThetaSide::Positive, s, 60)
            + &partial_theta(ThetaSide::NonPositive, s, 60);
        assert_eq!(full, halves);
    }
    let pos: Series = partial_theta(ThetaSide::Positive, 2, 9);
    assert_eq!(pos.coefficient_of(1, 1, 0).unwrap(), BigInt::from(1));
    assert_eq!(pos.coefficient_of(4, 2, 0).unwrap(), BigInt::from(1));
    assert_eq!(pos.coefficient_of(9, 3, 0).unwrap(), BigInt::from(1));
    assert_eq!(pos.num_terms(), 3);
    let neg: Series = partial_theta(ThetaSide::NonPositive, 2, 9);
    assert_eq!(neg.coefficient_of(0, 0, 0).unwrap(), BigInt::from(1));
}

#[test]
fn theta_vanishes_at_the_annihilating_value() {
    for s in 1..=4u32 {
        let prec_out = 40;
        let theta: Series = theta_full(s, input_prec_for_shift(prec_out, 1, 0));
        let a = Subst::monomial(BigInt::from(-1), -1);
        let z = substitute(&theta, Some(&a), None, Some(prec_out)).unwrap();
        assert!(z.is_zero(), "s = {s}: {z}");
        assert_eq!(z.prec(), prec_out);
    }
}

#[test]
fn rescaled_g_is_g_at_q4() {
    let g: Series = named_series("G", None, 25).unwrap();
    let direct: Series = sum_expand(
        &SumSpec::new(1, Quadratic::new(4, 0, 0)).over(ParamMonomial::t(4), 4, 1, 0),
        100,
    )
    .unwrap();
    assert_eq!(g.rescale(4), direct);
}

#[test]
fn fifth_order_f0_by_naive_expansion() {
    // sum q^(n^2)/(-q;q)_n with plain integer vectors
    const N: usize = 30;
    let mul = |x: &[i64], y: &[i64]| {
        let mut out = vec![0i64; N + 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate().take(N + 1 - i) {
                out[i + j] += a * b;
            }
        }
        out
    };
    let mut total = vec![0i64; N + 1];
    total[0] = 1;
    let mut inv_poch = total.clone();
    for n in 1..=5usize {
        // 1/(1 + q^n) = sum (-1)^k q^(nk)
        let mut geo = vec![0i64; N + 1];
        for k in 0..=N / n {
            geo[n * k] = if k % 2 == 0 { 1 } else { -1 };
        }
        inv_poch = mul(&inv_poch, &geo);
        for e in n * n..=N {
            total[e] += inv_poch[e - n * n];
        }
    }
    let f0: Series = named_series("f0", None, N as i64).unwrap();
    assert_eq!(ints(&f0), total);
    assert_eq!(&total[..4], [1, 1, -1, 1]);
}

#[test]
fn named_series_have_integer_values_at_a_b_one() {
    for (id, _) in NAMED_IDS {
        let s = match *id {
            "theta" | "theta-pos" | "theta-nonpos" | "correction" => Some(2),
            "bressoud-lhs" | "bressoud-rhs" => Some(3),
            _ => None,
        };
        let x: Series = named_series(id, s, 30).unwrap();
        let one = Subst::value(BigInt::from(1));
        let y = substitute(&x, Some(&one), Some(&one), None).unwrap();
        assert!(y.constant_coeffs().is_some(), "{id}");
    }
}
