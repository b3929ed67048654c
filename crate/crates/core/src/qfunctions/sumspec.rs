//! Declarative one-index sums `sum_n c (-1)^s(n) a^A(n) b^B(n) t^E(n) / prod (base; t^step)_len(n)`.

use serde::{Deserialize, Serialize};

use super::ctx::SeriesCtx;
use crate::error::{domain, usage, Error, Result};
use crate::scalar::Coefficient;
use crate::series::{CoeffPoly, Mono, ParamMonomial, QSeries};

/// `c1 * n + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Affine {
    #[serde(default)]
    pub c1: i64,
    #[serde(default)]
    pub c0: i64,
}

impl Affine {
    pub const ZERO: Affine = Affine { c1: 0, c0: 0 };

    pub fn new(c1: i64, c0: i64) -> Self {
        Self { c1, c0 }
    }

    pub fn constant(c0: i64) -> Self {
        Self { c1: 0, c0 }
    }

    pub fn eval(&self, n: i64) -> i64 {
        self.c1 * n + self.c0
    }
}

/// `(c2 n^2 + c1 n + c0) / div`, required to be integral at every evaluated `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadratic {
    #[serde(default)]
    pub c2: i64,
    #[serde(default)]
    pub c1: i64,
    #[serde(default)]
    pub c0: i64,
    #[serde(default = "one")]
    pub div: i64,
}

fn one() -> i64 {
    1
}

impl Quadratic {
    pub fn new(c2: i64, c1: i64, c0: i64) -> Self {
        Self { c2, c1, c0, div: 1 }
    }

    pub fn over(self, div: i64) -> Self {
        Self { div, ..self }
    }

    pub fn eval(&self, n: i64) -> Result<i64> {
        let num = self.c2 * n * n + self.c1 * n + self.c0;
        if num % self.div != 0 {
            return domain(format!(
                "exponent ({num})/{} is not an integer at n = {n}",
                self.div
            ));
        }
        Ok(num / self.div)
    }

    fn diverges(&self) -> bool {
        self.div > 0 && (self.c2 > 0 || (self.c2 == 0 && self.c1 > 0))
    }
}

/// One Pochhammer factor `(base; t^step)_len(n)`, in the denominator when `invert`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PochFactor {
    pub base: ParamMonomial,
    pub step: i64,
    pub len: Affine,
    #[serde(default = "yes")]
    pub invert: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumSpec {
    pub denom: u32,
    #[serde(default = "one")]
    pub coeff: i64,
    /// Sign `(-1)^sign(n)`.
    #[serde(default)]
    pub sign: Affine,
    #[serde(default)]
    pub a_exp: Affine,
    #[serde(default)]
    pub b_exp: Affine,
    pub t_exp: Quadratic,
    #[serde(default)]
    pub pochs: Vec<PochFactor>,
    #[serde(default)]
    pub n_start: i64,
    #[serde(default)]
    pub n_end: Option<i64>,
}

/// One evaluated summand before expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct SumTerm {
    pub n: i64,
    pub coeff: i64,
    pub a: i32,
    pub b: u32,
    pub e: i64,
    /// `(base, step, len, invert)` with `len >= 0`.
    pub pochs: Vec<(ParamMonomial, i64, usize, bool)>,
}

impl SumSpec {
    /// `sum_{n >= 0} t^(c2 n^2 + c1 n + c0)` with nothing else attached.
    pub fn new(denom: u32, t_exp: Quadratic) -> Self {
        Self {
            denom,
            coeff: 1,
            sign: Affine::ZERO,
            a_exp: Affine::ZERO,
            b_exp: Affine::ZERO,
            t_exp,
            pochs: Vec::new(),
            n_start: 0,
            n_end: None,
        }
    }

    pub fn coeff(mut self, c: i64) -> Self {
        self.coeff = c;
        self
    }

    pub fn sign(mut self, c1: i64, c0: i64) -> Self {
        self.sign = Affine::new(c1, c0);
        self
    }

    pub fn a(mut self, c1: i64, c0: i64) -> Self {
        self.a_exp = Affine::new(c1, c0);
        self
    }

    pub fn b(mut self, c1: i64, c0: i64) -> Self {
        self.b_exp = Affine::new(c1, c0);
        self
    }

    /// Divides by `(base; t^step)_(c1 n + c0)`.
    pub fn over(mut self, base: ParamMonomial, step: i64, c1: i64, c0: i64) -> Self {
        self.pochs.push(PochFactor {
            base,
            step,
            len: Affine::new(c1, c0),
            invert: true,
        });
        self
    }

    /// Multiplies by `(base; t^step)_(c1 n + c0)`.
    pub fn times(mut self, base: ParamMonomial, step: i64, c1: i64, c0: i64) -> Self {
        self.pochs.push(PochFactor {
            base,
            step,
            len: Affine::new(c1, c0),
            invert: false,
        });
        self
    }

    pub fn from(mut self, n: i64) -> Self {
        self.n_start = n;
        self
    }

    pub fn upto(mut self, n: i64) -> Self {
        self.n_end = Some(n);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.denom == 0 {
            return usage("denominator must be positive");
        }
        if self.t_exp.div <= 0 {
            return usage("exponent divisor must be positive");
        }
        if self.n_end.is_none() && !self.t_exp.diverges() {
            return domain(
                "exponent does not tend to infinity; the truncated sum would be infinite",
            );
        }
        for p in &self.pochs {
            if p.base.t <= 0 || p.step <= 0 {
                return domain(format!(
                    "Pochhammer factor {p:?} needs positive q-valuation"
                ));
            }
        }
        Ok(())
    }

    /// Evaluates summand `n`. `None` when an inverted Pochhammer of negative length kills it.
    pub fn term(&self, n: i64) -> Result<Option<SumTerm>> {
        let e = self.t_exp.eval(n)?;
        let b = self.b_exp.eval(n);
        if b < 0 {
            return domain(format!("negative power of b at n = {n}"));
        }
        let a = i32::try_from(self.a_exp.eval(n))
            .map_err(|_| Error::Domain("a exponent overflow".into()))?;
        let mut pochs = Vec::with_capacity(self.pochs.len());
        for p in &self.pochs {
            let len = p.len.eval(n);
            if len < 0 {
                if p.invert {
                    return Ok(None);
                }
                return domain(format!("Pochhammer length {len} is negative at n = {n}"));
            }
            pochs.push((p.base, p.step, len as usize, p.invert));
        }
        let coeff = if self.sign.eval(n).rem_euclid(2) == 1 {
            -self.coeff
        } else {
            self.coeff
        };
        Ok(Some(SumTerm {
            n,
            coeff,
            a,
            b: b as u32,
            e,
            pochs,
        }))
    }

    /// Indices whose summands can reach `t^prec`, in order.
    ///
    /// Stops once `E(n) > prec` and `E` is increasing from there on, which the
    /// divergence condition guarantees eventually.
    pub fn live_indices(&self, prec: i64) -> Result<Vec<i64>> {
        self.validate()?;
        let mut out = Vec::new();
        let mut n = self.n_start;
        loop {
            if self.n_end.is_some_and(|end| n > end) {
                break;
            }
            let e = self.t_exp.eval(n)?;
            if e <= prec {
                if e < 0 {
                    return domain(format!("negative exponent {e} at n = {n}"));
                }
                out.push(n);
            } else if self.monotone_from(n) {
                break;
            }
            n += 1;
        }
        Ok(out)
    }

    fn monotone_from(&self, n: i64) -> bool {
        // E(n+1) - E(n) = c2 (2n + 1) + c1 keeps growing once positive when c2 >= 0.
        self.t_exp.c2 >= 0 && self.t_exp.c2 * (2 * n + 1) + self.t_exp.c1 > 0
    }
}

impl<R: Coefficient> SeriesCtx<R> {
    /// Product of the term's Pochhammer factors, truncated at `limit`.
    fn poch_product(
        &self,
        pochs: &[(ParamMonomial, i64, usize, bool)],
        limit: i64,
    ) -> Result<QSeries<R>> {
        let mut acc: Option<QSeries<R>> = None;
        for &(base, step, len, invert) in pochs {
            let p = if invert {
                self.poch_inv(base, step, len)?
            } else {
                self.poch(base, step, len)?
            };
            acc = Some(match acc {
                None => p.truncate(limit),
                Some(x) => x.mul_trunc(&p, limit)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.one().truncate(limit)))
    }

    /// Expands `spec` to the context precision.
    pub fn sum(&self, spec: &SumSpec) -> Result<QSeries<R>> {
        self.sum_to(spec, self.prec())
    }

    /// Expands `spec` modulo `t^(limit+1)`, reusing the context cache.
    pub fn sum_to(&self, spec: &SumSpec, limit: i64) -> Result<QSeries<R>> {
        if spec.denom != self.denom() {
            return usage(format!(
                "spec denominator {} differs from context {}",
                spec.denom,
                self.denom()
            ));
        }
        let mut out = QSeries::zero(self.denom(), limit);
        for n in spec.live_indices(limit)? {
            let Some(term) = spec.term(n)? else { continue };
            let body = self.poch_product(&term.pochs, limit - term.e)?;
            out.add_product_term(
                &body,
                &R::from_i64(term.coeff),
                Mono::new(term.a, term.b),
                term.e,
            );
        }
        Ok(out)
    }

    /// `sum_m outer(m) * sum_n inner(m)(n)`, where the inner sum may depend on the
    /// outer index (shifted ranges, `m`-dependent exponents).
    pub fn double_sum(
        &self,
        outer: &SumSpec,
        inner: impl Fn(i64) -> SumSpec,
    ) -> Result<QSeries<R>> {
        if outer.denom != self.denom() {
            return usage("spec denominator differs from context");
        }
        let mut out = self.zero();
        for m in outer.live_indices(self.prec())? {
            let Some(term) = outer.term(m)? else { continue };
            let limit = self.prec() - term.e;
            let body = self
                .poch_product(&term.pochs, limit)?
                .mul_trunc(&self.sum_to(&inner(m), limit)?, limit)?;
            out.add_product_term(
                &body,
                &R::from_i64(term.coeff),
                Mono::new(term.a, term.b),
                term.e,
            );
        }
        Ok(out)
    }

    /// `sum_n term(n) * sum_{l < n} ratio^l / (base; t^step)_l`.
    ///
    /// The outer spec must carry no Pochhammer factors; the inner prefix sums are
    /// accumulated incrementally.
    pub fn sum_with_prefix(
        &self,
        outer: &SumSpec,
        ratio: ParamMonomial,
        base: ParamMonomial,
        step: i64,
    ) -> Result<QSeries<R>> {
        if !outer.pochs.is_empty() {
            return usage("outer spec of a prefix sum cannot carry Pochhammer factors");
        }
        if outer.denom != self.denom() {
            return usage("spec denominator differs from context");
        }
        if ratio.t < 0 {
            return domain("inner ratio needs non-negative q-valuation");
        }
        let live = outer.live_indices(self.prec())?;
        let mut out = self.zero();
        let mut prefix = self.zero();
        let mut filled = 0i64;
        for n in live {
            while filled < n {
                let l = filled;
                let inv = self.poch_inv(base, step, l as usize)?;
                let c = R::from_i64(ratio.coeff)
                    .checked_pow(l)
                    .expect("non-negative power");
                let mono = Mono::new(ratio.a * l as i32, ratio.b * l as u32);
                prefix.add_product_term(&inv, &c, mono, ratio.t * l);
                filled += 1;
            }
            let Some(term) = outer.term(n)? else { continue };
            out.add_product_term(
                &prefix,
                &R::from_i64(term.coeff),
                Mono::new(term.a, term.b),
                term.e,
            );
        }
        Ok(out)
    }
}

/// Expands `spec` at precision `prec` with a fresh context.
pub fn sum_expand<R: Coefficient>(spec: &SumSpec, prec: i64) -> Result<QSeries<R>> {
    SeriesCtx::new(spec.denom, prec).sum(spec)
}

/// `(1 - b)` as a constant-in-`t` multiplier.
pub fn one_minus_b<R: Coefficient>() -> CoeffPoly<R> {
    CoeffPoly::from_terms([(0, 0, R::one()), (0, 1, -R::one())])
}
