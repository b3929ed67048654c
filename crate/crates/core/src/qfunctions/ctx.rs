//! Per-run expansion context: fixed denominator and precision plus a cache of
//! finite Pochhammer products and their inverses.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{domain, Result};
use crate::scalar::Coefficient;
use crate::series::{CoeffPoly, ParamMonomial, QSeries};

type PochKey = (ParamMonomial, i64, bool);

/// Expansion context for one denominator `D` and precision `P` (in `t`, `t^D = q`).
///
/// Holds `(base; t^step)_n` and `1/(base; t^step)_n` for every `n` requested so
/// far, built incrementally. The cache uses `Rc`, so a context stays on one thread;
/// parallel jobs each build their own.
pub struct SeriesCtx<R: Coefficient> {
    denom: u32,
    prec: i64,
    cache: RefCell<HashMap<PochKey, Vec<Rc<QSeries<R>>>>>,
}

impl<R: Coefficient> SeriesCtx<R> {
    pub fn new(denom: u32, prec: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        Self {
            denom,
            prec,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Exponent numerator of `q^k`.
    pub fn q(&self, k: i64) -> i64 {
        k * self.denom as i64
    }

    pub fn zero(&self) -> QSeries<R> {
        QSeries::zero(self.denom, self.prec)
    }

    pub fn one(&self) -> QSeries<R> {
        QSeries::one(self.denom, self.prec)
    }

    /// `c * a^a * b^b * t^e`.
    pub fn mono(&self, c: i64, a: i32, b: u32, e: i64) -> QSeries<R> {
        QSeries::monomial(
            self.denom,
            self.prec,
            e,
            CoeffPoly::monomial(R::from_i64(c), a, b),
        )
    }

    fn cached(
        &self,
        base: ParamMonomial,
        step: i64,
        n: usize,
        invert: bool,
    ) -> Result<Rc<QSeries<R>>> {
        if base.t <= 0 || step <= 0 {
            return domain(format!(
                "Pochhammer base {base:?} with step {step} needs positive q-valuation"
            ));
        }
        let mut cache = self.cache.borrow_mut();
        let list = cache
            .entry((base, step, invert))
            .or_insert_with(|| vec![Rc::new(self.one())]);
        while list.len() <= n {
            let k = (list.len() - 1) as i64;
            let factor = base.times_t(k * step);
            let last = list.last().expect("cache starts with the empty product");
            let next = if invert {
                last.div_one_minus(factor)?
            } else {
                last.mul_one_minus(factor)?
            };
            list.push(Rc::new(next));
        }
        Ok(Rc::clone(&list[n]))
    }

    /// `(base; t^step)_n`.
    pub fn poch(&self, base: ParamMonomial, step: i64, n: usize) -> Result<Rc<QSeries<R>>> {
        self.cached(base, step, n, false)
    }

    /// `1 / (base; t^step)_n`.
    pub fn poch_inv(&self, base: ParamMonomial, step: i64, n: usize) -> Result<Rc<QSeries<R>>> {
        self.cached(base, step, n, true)
    }

    /// Number of factors of `(base; t^step)_inf` that differ from 1 at this precision.
    fn live_factors(&self, base: ParamMonomial, step: i64) -> Result<usize> {
        if base.t <= 0 || step <= 0 {
            return domain(format!(
                "infinite product with base {base:?} does not converge formally"
            ));
        }
        Ok(if base.t > self.prec {
            0
        } else {
            ((self.prec - base.t) / step + 1) as usize
        })
    }

    /// `(base; t^step)_inf` to the context precision.
    pub fn poch_inf(&self, base: ParamMonomial, step: i64) -> Result<QSeries<R>> {
        let n = self.live_factors(base, step)?;
        Ok((*self.poch(base, step, n)?).clone())
    }

    /// `1 / (base; t^step)_inf` to the context precision.
    pub fn poch_inf_inv(&self, base: ParamMonomial, step: i64) -> Result<QSeries<R>> {
        let n = self.live_factors(base, step)?;
        Ok((*self.poch_inv(base, step, n)?).clone())
    }
}

/// `(base; t^step)_n` as a standalone series.
pub fn poch_finite<R: Coefficient>(
    denom: u32,
    prec: i64,
    base: ParamMonomial,
    step: i64,
    n: usize,
) -> Result<QSeries<R>> {
    let ctx = SeriesCtx::new(denom, prec);
    let p = ctx.poch(base, step, n)?;
    Ok((*p).clone())
}

/// `(base; t^step)_inf` truncated at `prec`.
pub fn poch_infinite<R: Coefficient>(
    denom: u32,
    prec: i64,
    base: ParamMonomial,
    step: i64,
) -> Result<QSeries<R>> {
    SeriesCtx::new(denom, prec).poch_inf(base, step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Series;
    use num_bigint::BigInt;

    #[test]
    fn finite_products() {
        let q = ParamMonomial::t(1);
        let p: Series = poch_finite(1, 10, q, 1, 0).unwrap();
        assert_eq!(p, Series::one(1, 10));
        let p: Series = poch_finite(1, 10, q, 1, 3).unwrap();
        assert_eq!(p, Series::from_ints(1, 10, &[1, -1, -1, 0, 1, 1, -1]));
        let bq = ParamMonomial::new(1, 0, 1, 1);
        let p: Series = poch_finite(1, 10, bq, 1, 2).unwrap();
        let expect = Series::from_terms(
            1,
            10,
            [
                (0, CoeffPoly::one()),
                (1, CoeffPoly::monomial(BigInt::from(-1), 0, 1)),
                (2, CoeffPoly::monomial(BigInt::from(-1), 0, 1)),
                (3, CoeffPoly::monomial(BigInt::from(1), 0, 2)),
            ],
        )
        .unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn zero_valuation_base_is_rejected() {
        let r: Result<Series> = poch_infinite(1, 10, ParamMonomial::new(1, 1, 0, 0), 1);
        assert!(matches!(r, Err(crate::Error::Domain(_))));
    }

    #[test]
    fn cached_inverse_matches_inversion() {
        let ctx: SeriesCtx<BigInt> = SeriesCtx::new(2, 30);
        let base = ParamMonomial::new(-1, 1, 0, 2);
        let inv = ctx.poch_inv(base, 4, 5).unwrap();
        let direct = ctx.poch(base, 4, 5).unwrap().invert(30).unwrap();
        assert_eq!(*inv, direct);
    }
}
