//! Theta and partial theta sums `sum a^n t^(unit n^2)`, and the nested
//! correction sum that accompanies them.

use super::ctx::SeriesCtx;
use super::sumspec::{one_minus_b, Quadratic, SumSpec};
use crate::error::Result;
use crate::scalar::Coefficient;
use crate::series::{CoeffPoly, ParamMonomial, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaSide {
    /// `n` over all integers.
    Full,
    /// `n >= 1`.
    Positive,
    /// `n <= 0`.
    NonPositive,
}

/// `sum_n (sign a)^n t^(unit n^2)` over the chosen index range; `sign` is `1` or `-1`.
pub fn theta_sum<R: Coefficient>(
    denom: u32,
    prec: i64,
    unit: i64,
    side: ThetaSide,
    sign: i64,
) -> QSeries<R> {
    assert!(unit > 0, "theta unit must be positive");
    let mut out = QSeries::zero(denom, prec);
    let mut n = 0i64;
    while unit * n * n <= prec {
        let c = if sign < 0 && n % 2 == 1 {
            -R::one()
        } else {
            R::one()
        };
        let e = unit * n * n;
        let mut p = CoeffPoly::zero();
        if n == 0 {
            if side != ThetaSide::Positive {
                p.add_term(crate::Mono::ONE, &c);
            }
        } else {
            if side != ThetaSide::NonPositive {
                p.add_term(crate::Mono::new(n as i32, 0), &c);
            }
            if side != ThetaSide::Positive {
                p.add_term(crate::Mono::new(-n as i32, 0), &c);
            }
        }
        out.add_to(e, &p);
        n += 1;
    }
    out
}

/// `sum_{n in Z} a^n q^(n^2/(2s))` at `D = 2s`.
pub fn theta_full<R: Coefficient>(s: u32, prec: i64) -> QSeries<R> {
    theta_sum(2 * s, prec, 1, ThetaSide::Full, 1)
}

/// One-sided half of [`theta_full`].
pub fn partial_theta<R: Coefficient>(side: ThetaSide, s: u32, prec: i64) -> QSeries<R> {
    theta_sum(2 * s, prec, 1, side, 1)
}

/// `(1 - b) sum_{n >= 1} a^n t^(unit n^2) sum_{l < n} b^l / (q)_l` in the context's denominator.
pub fn correction_term<R: Coefficient>(ctx: &SeriesCtx<R>, unit: i64) -> Result<QSeries<R>> {
    let outer = SumSpec::new(ctx.denom(), Quadratic::new(unit, 0, 0))
        .a(1, 0)
        .from(1);
    let q = ParamMonomial::t(ctx.q(1));
    let nested = ctx.sum_with_prefix(&outer, ParamMonomial::new(1, 0, 1, 0), q, ctx.q(1))?;
    Ok(nested.mul_monomial(&one_minus_b(), 0))
}
