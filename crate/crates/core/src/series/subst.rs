//! Parameter substitution: `a -> c_a * a^i * t^e`, `b -> c_b * b^j * t^f`.

use super::coeff::{CoeffPoly, Mono};
use super::qseries::QSeries;
use crate::error::{domain, usage, Error, Result};
use crate::scalar::Coefficient;

/// Image of one parameter: `coeff * var^var_pow * t^t_exp`.
///
/// `var_pow = 0` collapses the parameter to the value `coeff * t^t_exp`;
/// `var_pow = 1` keeps it symbolic (e.g. `b -> -b` is `{coeff: -1, var_pow: 1, t_exp: 0}`).
#[derive(Clone, Debug, PartialEq)]
pub struct Subst<R> {
    pub coeff: R,
    pub var_pow: i32,
    pub t_exp: i64,
}

impl<R: Coefficient> Subst<R> {
    pub fn value(coeff: R) -> Self {
        Self {
            coeff,
            var_pow: 0,
            t_exp: 0,
        }
    }

    pub fn identity() -> Self {
        Self {
            coeff: R::one(),
            var_pow: 1,
            t_exp: 0,
        }
    }

    /// `c * t^e` with the parameter eliminated.
    pub fn monomial(coeff: R, t_exp: i64) -> Self {
        Self {
            coeff,
            var_pow: 0,
            t_exp,
        }
    }

    pub fn scaled_var(coeff: R) -> Self {
        Self {
            coeff,
            var_pow: 1,
            t_exp: 0,
        }
    }
}

/// Substitutes for `a` and/or `b` (`None` leaves a parameter untouched).
///
/// When a substitution carries a power of `t`, terms beyond the input precision
/// can land below it, so the caller must supply `prec_out` and guarantee the input
/// was expanded far enough for that bound. Without a `t` shift the precision is
/// preserved.
pub fn substitute<R: Coefficient>(
    x: &QSeries<R>,
    a: Option<&Subst<R>>,
    b: Option<&Subst<R>>,
    prec_out: Option<i64>,
) -> Result<QSeries<R>> {
    let a = a.cloned().unwrap_or_else(Subst::identity);
    let b = b.cloned().unwrap_or_else(Subst::identity);
    if a.coeff.is_zero() && a.var_pow == 0 {
        return domain("a = 0 is excluded");
    }
    if b.var_pow < 0 {
        return usage("b may only map to a non-negative power of b");
    }
    if b.t_exp < 0 {
        return usage("b may only carry a non-negative power of t");
    }
    let shifted = a.t_exp != 0 || b.t_exp != 0;
    let prec = match prec_out {
        Some(p) => {
            if !shifted && p > x.prec() {
                return usage("prec_out exceeds the input precision");
            }
            p
        }
        None if a.t_exp != 0 => {
            return usage("a substitution with a power of t needs an explicit output precision")
        }
        None => x.prec(),
    };
    let mut out = QSeries::zero(x.denom(), prec);
    for (e, poly) in x.iter() {
        for (m, c) in poly.iter() {
            let ca = a.coeff.checked_pow(m.a as i64).ok_or_else(|| {
                Error::Domain(format!(
                    "a -> {} is not invertible but a^{} occurs",
                    a.coeff, m.a
                ))
            })?;
            let cb = b.coeff.checked_pow(m.b as i64).expect("non-negative power");
            let new_e = e + m.a as i64 * a.t_exp + m.b as i64 * b.t_exp;
            if new_e < 0 {
                return domain(format!("substitution produced negative exponent {new_e}"));
            }
            if new_e > prec {
                continue;
            }
            let new_a = m.a * a.var_pow;
            let new_b = m.b as i64 * b.var_pow as i64;
            let mut v = c.clone();
            v *= &ca;
            v *= &cb;
            let mut p = CoeffPoly::zero();
            p.add_term(Mono::new(new_a, new_b as u32), &v);
            out.add_to(new_e, &p);
        }
    }
    Ok(out)
}

/// Collapses `a` and `b` to values `a_val * t^a_shift` and `b_val`.
pub fn specialize<R: Coefficient>(
    x: &QSeries<R>,
    a_val: &Subst<R>,
    b_val: &R,
    prec_out: Option<i64>,
) -> Result<QSeries<R>> {
    if a_val.var_pow != 0 {
        return usage("specialize eliminates a; use substitute to keep it symbolic");
    }
    substitute(x, Some(a_val), Some(&Subst::value(b_val.clone())), prec_out)
}

/// Smallest input precision `P_in` such that every term `t^T` with `T > P_in`
/// still lands above `p_out` after a shift of at most `slope * ceil(sqrt(T)) + offset`.
///
/// Theta-like sums have `|a-exponent| <= sqrt(T)`, which makes this bound sound
/// for `a -> c * t^(+-slope)`.
pub fn input_prec_for_shift(p_out: i64, slope: i64, offset: i64) -> i64 {
    let lands_above = |t: i64| t - slope * isqrt_ceil(t) - offset > p_out;
    let mut p = p_out.max(0);
    // The shifted exponent is eventually increasing in T; scan until it stays above.
    loop {
        if (p + 1..=p + 1 + 4 * slope + 4).all(lands_above) {
            return p;
        }
        p += 1;
    }
}

fn isqrt_ceil(t: i64) -> i64 {
    if t <= 0 {
        return 0;
    }
    let mut r = (t as f64).sqrt() as i64;
    while r * r < t {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= t {
        r -= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    type S = QSeries<BigInt>;
    type P = CoeffPoly<BigInt>;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn a_plus_inverse_at_one() {
        let x = S::monomial(1, 3, 0, P::from_terms([(1, 0, int(1)), (-1, 0, int(1))]));
        let y = specialize(&x, &Subst::value(int(1)), &int(1), None).unwrap();
        assert_eq!(y, S::monomial(1, 3, 0, P::constant(int(2))));
    }

    #[test]
    fn a_equal_zero_is_rejected() {
        let x = S::one(1, 3);
        assert!(matches!(
            specialize(&x, &Subst::value(int(0)), &int(1), None),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn non_unit_integer_a_needs_rationals() {
        let x = S::monomial(1, 3, 1, P::monomial(int(1), -2, 0));
        assert!(specialize(&x, &Subst::value(int(2)), &int(1), None).is_err());
        let xr: QSeries<BigRational> = x.map_ring(|c| BigRational::from_integer(c.clone()));
        let y = specialize(
            &xr,
            &Subst::value(BigRational::from_integer(int(2))),
            &BigRational::one(),
            None,
        )
        .unwrap();
        assert_eq!(
            y.coefficient_of(1, 0, 0).unwrap(),
            BigRational::new(int(1), int(4))
        );
    }

    #[test]
    fn monomial_shift_requires_explicit_precision() {
        let x = S::monomial(4, 9, 4, P::monomial(int(1), 2, 0));
        let a = Subst::monomial(int(-1), -1);
        assert!(matches!(
            substitute(&x, Some(&a), None, None),
            Err(Error::Usage(_))
        ));
        let y = substitute(&x, Some(&a), None, Some(5)).unwrap();
        assert_eq!(y.coefficient_of(2, 0, 0).unwrap(), int(1));
    }

    #[test]
    fn b_to_minus_b_keeps_symbol() {
        let x = S::monomial(1, 3, 1, P::from_terms([(0, 1, int(1)), (0, 2, int(3))]));
        let y = substitute(&x, None, Some(&Subst::scaled_var(int(-1))), None).unwrap();
        assert_eq!(
            y.coeff(1),
            Some(&P::from_terms([(0, 1, int(-1)), (0, 2, int(3))]))
        );
    }

    #[test]
    fn input_precision_bound_is_monotone_and_sufficient() {
        for p in [0, 5, 50, 200] {
            let pin = input_prec_for_shift(p, 1, 0);
            assert!(pin >= p);
            for t in pin + 1..pin + 200 {
                assert!(t - isqrt_ceil(t) > p);
            }
        }
        assert_eq!(isqrt_ceil(16), 4);
        assert_eq!(isqrt_ceil(17), 5);
    }
}
