//! Truncated Puiseux series in `q` with coefficients in `R[a, 1/a, b]`.
//!
//! A series lives in `t` with `t^denom = q`. Keys are exponent numerators
//! (powers of `t`), all in `0..=prec`; the series is known exactly modulo
//! `t^(prec + 1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::coeff::{CoeffPoly, Mono};
use crate::error::{domain, usage, Error, Result};
use crate::scalar::{Coefficient, Real};

/// A signed parameter monomial `coeff * a^a * b^b * t^t` with a small integer coefficient.
///
/// Used for Pochhammer bases (`bq` is `{coeff: 1, a: 0, b: 1, t: D}`) and for
/// the factors `1 - m` that build them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamMonomial {
    pub coeff: i64,
    #[serde(default)]
    pub a: i32,
    #[serde(default)]
    pub b: u32,
    #[serde(default)]
    pub t: i64,
}

impl ParamMonomial {
    pub fn new(coeff: i64, a: i32, b: u32, t: i64) -> Self {
        Self { coeff, a, b, t }
    }

    /// `t^e`.
    pub fn t(e: i64) -> Self {
        Self::new(1, 0, 0, e)
    }

    /// Multiplies by `t^e`.
    pub fn times_t(self, e: i64) -> Self {
        Self {
            t: self.t + e,
            ..self
        }
    }

    pub fn negated(self) -> Self {
        Self {
            coeff: -self.coeff,
            ..self
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries<R> {
    denom: u32,
    prec: i64,
    coeffs: BTreeMap<i64, CoeffPoly<R>>,
}

impl<R: Coefficient> QSeries<R> {
    pub fn zero(denom: u32, prec: i64) -> Self {
        assert!(denom > 0, "denominator must be positive");
        Self {
            denom,
            prec,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(denom: u32, prec: i64) -> Self {
        Self::monomial(denom, prec, 0, CoeffPoly::one())
    }

    /// `poly * t^e`, dropped if `e > prec`.
    pub fn monomial(denom: u32, prec: i64, e: i64, poly: CoeffPoly<R>) -> Self {
        let mut s = Self::zero(denom, prec);
        s.add_to(e, &poly);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; terms beyond `prec` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (i64, CoeffPoly<R>)>>(
        denom: u32,
        prec: i64,
        terms: I,
    ) -> Result<Self> {
        let mut s = Self::zero(denom, prec);
        for (e, p) in terms {
            if e < 0 {
                return domain(format!("negative exponent {e}"));
            }
            s.add_to(e, &p);
        }
        Ok(s)
    }

    /// Integer coefficients `c_0, c_1, ...` in `t` (constant in `a`, `b`).
    pub fn from_ints(denom: u32, prec: i64, cs: &[i64]) -> Self {
        let mut s = Self::zero(denom, prec);
        for (e, &c) in cs.iter().enumerate() {
            s.add_to(e as i64, &CoeffPoly::constant(R::from_i64(c)));
        }
        s
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least stored exponent; `prec + 1` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.prec + 1)
    }

    pub fn coeff(&self, e: i64) -> Option<&CoeffPoly<R>> {
        self.coeffs.get(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &CoeffPoly<R>)> {
        self.coeffs.iter().map(|(e, p)| (*e, p))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Exact coefficient of `a^a_exp b^b_exp t^e`.
    pub fn coefficient_of(&self, e: i64, a_exp: i32, b_exp: u32) -> Result<R> {
        if e > self.prec {
            return usage(format!(
                "exponent {e} is beyond the known precision {}",
                self.prec
            ));
        }
        if e < 0 {
            return usage(format!("negative exponent {e}"));
        }
        Ok(self
            .coeffs
            .get(&e)
            .map_or_else(R::zero, |p| p.get(a_exp, b_exp)))
    }

    /// Integer-coefficient view `[c_0, ..., c_prec]` when every coefficient is a constant.
    pub fn constant_coeffs(&self) -> Option<Vec<R>> {
        (0..=self.prec)
            .map(|e| {
                self.coeffs
                    .get(&e)
                    .map_or(Some(R::zero()), |p| p.as_constant())
            })
            .collect()
    }

    pub(crate) fn add_to(&mut self, e: i64, p: &CoeffPoly<R>) {
        if e > self.prec || p.is_zero() {
            return;
        }
        debug_assert!(e >= 0);
        let slot = self.coeffs.entry(e).or_default();
        slot.add_assign(p);
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Keeps every key and changes only the denominator, i.e. replaces `q` by
    /// `q^(old/new)` when `new` divides `old`.
    pub fn relabel(&self, new_denom: u32) -> Result<Self> {
        if new_denom == 0 {
            return usage("denominator must be positive");
        }
        Ok(Self {
            denom: new_denom,
            prec: self.prec,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Exact division by `t^e`.
    pub fn div_t(&self, e: i64) -> Result<Self> {
        if let Some(k) = self.coeffs.keys().next().filter(|k| **k < e) {
            return domain(format!("term t^{k} is not divisible by t^{e}"));
        }
        Ok(Self {
            denom: self.denom,
            prec: self.prec - e,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, p)| (k - e, p.clone()))
                .collect(),
        })
    }

    /// Drops everything above `prec` (no-op if `prec` is not lower).
    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        Self {
            denom: self.denom,
            prec,
            coeffs: self
                .coeffs
                .range(..=prec)
                .map(|(e, p)| (*e, p.clone()))
                .collect(),
        }
    }

    fn check_denom(&self, other: &Self, op: &str) -> Result<()> {
        if self.denom != other.denom {
            return usage(format!(
                "{op}: denominator mismatch ({} vs {})",
                self.denom, other.denom
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_denom(other, "add")?;
        let mut out = self.truncate(self.prec.min(other.prec));
        for (e, p) in other.coeffs.range(..=out.prec) {
            out.add_to(*e, p);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        Self {
            denom: self.denom,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|(e, p)| (*e, p.neg())).collect(),
        }
    }

    /// Cauchy product. Precision is `min(prec x + val y, prec y + val x)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_denom(other, "mul")?;
        let prec = (self.prec + other.valuation()).min(other.prec + self.valuation());
        Ok(self.mul_upto(other, prec))
    }

    /// Product restricted to exponents `<= limit`; the result precision is
    /// `min(limit, sound product precision)`.
    pub fn mul_trunc(&self, other: &Self, limit: i64) -> Result<Self> {
        self.check_denom(other, "mul")?;
        let prec = (self.prec + other.valuation())
            .min(other.prec + self.valuation())
            .min(limit);
        Ok(self.mul_upto(other, prec))
    }

    fn mul_upto(&self, other: &Self, prec: i64) -> Self {
        let mut acc: BTreeMap<i64, CoeffPoly<R>> = BTreeMap::new();
        for (ex, px) in &self.coeffs {
            if *ex > prec {
                break;
            }
            for (ey, py) in other.coeffs.range(..=prec - ex) {
                acc.entry(ex + ey).or_default().add_mul(px, py);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Self {
            denom: self.denom,
            prec,
            coeffs: acc,
        }
    }

    /// `self * poly * t^e`. Precision grows by `e`.
    pub fn mul_monomial(&self, poly: &CoeffPoly<R>, e: i64) -> Self {
        assert!(e >= 0, "monomial shift must be non-negative");
        let prec = self.prec + e;
        let mut out = Self::zero(self.denom, prec);
        if poly.is_zero() {
            return out;
        }
        for (ex, px) in &self.coeffs {
            out.coeffs.insert(ex + e, px.mul(poly));
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        out
    }

    /// `self * c`.
    pub fn scale(&self, c: &R) -> Self {
        self.mul_monomial(&CoeffPoly::constant(c.clone()), 0)
    }

    /// `acc += poly * t^e * x`, truncated at `self.prec`. Used by the builders.
    pub(crate) fn add_product_term(&mut self, x: &Self, c: &R, m: Mono, e: i64) {
        let limit = self.prec - e;
        for (ex, px) in x.coeffs.range(..=limit) {
            let slot = self.coeffs.entry(ex + e).or_default();
            slot.add_scaled(px, c, m);
            if slot.is_zero() {
                self.coeffs.remove(&(ex + e));
            }
        }
    }

    /// Multiplies by `(1 - m)`.
    pub fn mul_one_minus(&self, m: ParamMonomial) -> Result<Self> {
        if m.t <= 0 {
            return domain("factor 1 - m needs m of positive t-valuation");
        }
        let mut out = self.clone();
        let c = R::from_i64(-m.coeff);
        let mono = Mono::new(m.a, m.b);
        for (e, p) in self.coeffs.range(..=self.prec - m.t) {
            let slot = out.coeffs.entry(e + m.t).or_default();
            slot.add_scaled(p, &c, mono);
            if slot.is_zero() {
                out.coeffs.remove(&(e + m.t));
            }
        }
        Ok(out)
    }

    /// Divides by `(1 - m)`: `y_k = x_k + m * y_{k - t(m)}`.
    pub fn div_one_minus(&self, m: ParamMonomial) -> Result<Self> {
        if m.t <= 0 {
            return domain("factor 1 - m needs m of positive t-valuation to be inverted");
        }
        let c = R::from_i64(m.coeff);
        let mono = Mono::new(m.a, m.b);
        let mut out: BTreeMap<i64, CoeffPoly<R>> = BTreeMap::new();
        let first = match self.coeffs.keys().next() {
            Some(&e) => e,
            None => return Ok(self.clone()),
        };
        for k in first..=self.prec {
            let mut y = self.coeffs.get(&k).cloned().unwrap_or_default();
            if let Some(prev) = out.get(&(k - m.t)) {
                y.add_scaled(prev, &c, mono);
            }
            if !y.is_zero() {
                out.insert(k, y);
            }
        }
        Ok(Self {
            denom: self.denom,
            prec: self.prec,
            coeffs: out,
        })
    }

    /// Multiplicative inverse modulo `t^(target_prec + 1)`.
    ///
    /// The constant term must be a unit scalar of the ring.
    pub fn invert(&self, target_prec: i64) -> Result<Self> {
        let c0 = self
            .coeffs
            .get(&0)
            .and_then(|p| p.as_constant())
            .ok_or_else(|| Error::Domain("constant term is not a scalar".into()))?;
        let inv0 = c0
            .try_inverse()
            .ok_or_else(|| Error::Domain(format!("constant term {c0} is not a unit")))?;
        let prec = target_prec.min(self.prec);
        let neg_inv0 = -inv0.clone();
        let tail: Vec<(i64, &CoeffPoly<R>)> = self
            .coeffs
            .range(1..=prec.max(0))
            .map(|(e, p)| (*e, p))
            .collect();
        let mut out: BTreeMap<i64, CoeffPoly<R>> = BTreeMap::new();
        if prec >= 0 {
            out.insert(0, CoeffPoly::constant(inv0));
        }
        for n in 1..=prec {
            let mut acc = CoeffPoly::zero();
            for (i, xi) in &tail {
                if *i > n {
                    break;
                }
                if let Some(y) = out.get(&(n - i)) {
                    acc.add_mul(xi, y);
                }
            }
            if !acc.is_zero() {
                out.insert(n, acc.scale(&neg_inv0));
            }
        }
        Ok(Self {
            denom: self.denom,
            prec,
            coeffs: out,
        })
    }

    /// Substitutes `q -> q^k` (`t -> t^k`) with the denominator unchanged.
    pub fn rescale(&self, k: u32) -> Self {
        assert!(k > 0, "rescale factor must be positive");
        let k = k as i64;
        Self {
            denom: self.denom,
            prec: self.prec * k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, p)| (e * k, p.clone()))
                .collect(),
        }
    }

    /// Re-expresses the same series with a denominator that is a multiple of the current one.
    pub fn embed(&self, new_denom: u32) -> Result<Self> {
        if !new_denom.is_multiple_of(self.denom) {
            return usage(format!(
                "cannot embed denominator {} into {new_denom}",
                self.denom
            ));
        }
        let mut s = self.rescale(new_denom / self.denom);
        s.denom = new_denom;
        Ok(s)
    }

    /// Re-expresses the series with a smaller denominator; every exponent must be divisible.
    pub fn reduce_denom(&self, new_denom: u32) -> Result<Self> {
        if new_denom == 0 || !self.denom.is_multiple_of(new_denom) {
            return usage(format!(
                "cannot reduce denominator {} to {new_denom}",
                self.denom
            ));
        }
        let k = (self.denom / new_denom) as i64;
        if let Some(e) = self.coeffs.keys().find(|e| *e % k != 0) {
            return domain(format!("exponent {e} is not a multiple of {k}"));
        }
        Ok(Self {
            denom: new_denom,
            prec: self.prec.div_euclid(k),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, p)| (e / k, p.clone()))
                .collect(),
        })
    }

    /// Substitutes `t -> -t` (for `denom = 1` this is `q -> -q`).
    pub fn negate_t(&self) -> Self {
        Self {
            denom: self.denom,
            prec: self.prec,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, p)| (*e, if e % 2 == 0 { p.clone() } else { p.neg() }))
                .collect(),
        }
    }

    /// Coefficient-wise ring conversion.
    pub fn map_ring<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        let mut out = QSeries::zero(self.denom, self.prec);
        for (e, p) in &self.coeffs {
            let q = p.map_ring(&f);
            if !q.is_zero() {
                out.coeffs.insert(*e, q);
            }
        }
        out
    }

    /// Numeric value at `q`, with `t = q^(1/denom)`. The truncation error is not estimated.
    pub fn eval<F: Real>(&self, a: F, b: F, q: F) -> F {
        let t = q.powf(F::one() / F::from_u32(self.denom).unwrap());
        let (a, b) = (a.to_f64_lossy(), b.to_f64_lossy());
        let mut sum = F::zero();
        for (e, p) in &self.coeffs {
            sum = sum + F::lit(p.eval_f64(a, b)) * t.powi(*e as i32);
        }
        sum
    }

    /// Adds `delta * a^a_exp * b^b_exp * t^e` (mutation-test hook).
    pub fn perturbed(&self, e: i64, a_exp: i32, b_exp: u32, delta: i64) -> Self {
        let mut s = self.clone();
        s.add_to(e, &CoeffPoly::monomial(R::from_i64(delta), a_exp, b_exp));
        s
    }

    /// Keeps only terms satisfying the predicate (e.g. extracting a fixed power of `a`).
    pub fn filter_terms(&self, mut keep: impl FnMut(i64, &Mono) -> bool) -> Self {
        let mut s = self.clone();
        for (e, p) in s.coeffs.iter_mut() {
            p.retain(|m, _| keep(*e, m));
        }
        s.coeffs.retain(|_, p| !p.is_zero());
        s
    }
}

impl<R: Coefficient> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, p)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let body = if p.len() == 1 {
                p.to_string()
            } else {
                format!("({p})")
            };
            match e {
                0 => write!(f, "{body}")?,
                _ if p.is_one() => write!(f, "t^{e}")?,
                _ => write!(f, "{body}*t^{e}")?,
            }
        }
        write!(f, " + O(t^{}) [t^{} = q]", self.prec + 1, self.denom)
    }
}

// Operator sugar for builder code. These panic on a denominator mismatch;
// use the `try_*` methods where the mismatch is a recoverable usage error.

impl<'a, R: Coefficient> Add<&'a QSeries<R>> for &'a QSeries<R> {
    type Output = QSeries<R>;
    fn add(self, rhs: &'a QSeries<R>) -> QSeries<R> {
        self.try_add(rhs).expect("series add")
    }
}

impl<'a, R: Coefficient> Sub<&'a QSeries<R>> for &'a QSeries<R> {
    type Output = QSeries<R>;
    fn sub(self, rhs: &'a QSeries<R>) -> QSeries<R> {
        self.try_sub(rhs).expect("series sub")
    }
}

impl<'a, R: Coefficient> Mul<&'a QSeries<R>> for &'a QSeries<R> {
    type Output = QSeries<R>;
    fn mul(self, rhs: &'a QSeries<R>) -> QSeries<R> {
        self.try_mul(rhs).expect("series mul")
    }
}

impl<R: Coefficient> Neg for &QSeries<R> {
    type Output = QSeries<R>;
    fn neg(self) -> QSeries<R> {
        self.neg_ref()
    }
}

impl<R: Coefficient> Add for QSeries<R> {
    type Output = QSeries<R>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<R: Coefficient> Mul for QSeries<R> {
    type Output = QSeries<R>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
