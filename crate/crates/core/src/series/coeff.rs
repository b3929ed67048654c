//! Sparse Laurent polynomials in `a`, ordinary polynomials in `b`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Coefficient;

/// Exponent pair of a monomial `a^a * b^b`. `b` is never negative.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Mono {
    pub a: i32,
    pub b: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, b: 0 };

    pub fn new(a: i32, b: u32) -> Self {
        Self { a, b }
    }

    fn mul(self, other: Mono) -> Mono {
        Mono {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }
}

/// Element of `R[a, 1/a, b]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffPoly<R> {
    terms: BTreeMap<Mono, R>,
}

impl<R> Default for CoeffPoly<R> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<R: Coefficient> CoeffPoly<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: R, a: i32, b: u32) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::new(a, b), c);
        }
        p
    }

    /// Builds a polynomial from `(a_exp, b_exp, coeff)` triples, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i32, u32, R)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (a, b, c) in terms {
            p.add_term(Mono::new(a, b), &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, a: i32, b: u32) -> R {
        self.terms
            .get(&Mono::new(a, b))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &R)> {
        self.terms.iter()
    }

    /// The scalar value if this polynomial is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Mono, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_owned(&mut self, m: Mono, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term_owned(*m, -c.clone());
        }
    }

    /// `self += x * y`.
    pub fn add_mul(&mut self, x: &Self, y: &Self) {
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                let mut c = cx.clone();
                c *= cy;
                self.add_term_owned(mx.mul(*my), c);
            }
        }
    }

    /// `self += c * m * x` for a single monomial factor.
    pub fn add_scaled(&mut self, x: &Self, c: &R, m: Mono) {
        for (mx, cx) in &x.terms {
            let mut v = cx.clone();
            v *= c;
            self.add_term_owned(mx.mul(m), v);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.add_mul(self, other);
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c, Mono::ONE);
        out
    }

    /// Multiplies by `a^da * b^db`.
    pub fn shift(&self, da: i32, db: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.a + da, m.b + db), c.clone()))
                .collect(),
        }
    }

    /// Coefficient-wise ring conversion.
    pub fn map_ring<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> CoeffPoly<S> {
        let mut out = CoeffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term_owned(*m, f(c));
        }
        out
    }

    /// Numeric value at real `a`, `b`.
    pub fn eval_f64(&self, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * a.powi(m.a) * b.powi(m.b as i32))
            .sum()
    }

    pub(crate) fn retain(&mut self, f: impl FnMut(&Mono, &mut R) -> bool) {
        self.terms.retain(f);
    }
}

impl<R: Coefficient> fmt::Display for CoeffPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars = match (m.a, m.b) {
                (0, 0) => String::new(),
                _ => {
                    let mut v = Vec::new();
                    match m.a {
                        0 => {}
                        1 => v.push("a".to_string()),
                        e => v.push(format!("a^{e}")),
                    }
                    match m.b {
                        0 => {}
                        1 => v.push("b".to_string()),
                        e => v.push(format!("b^{e}")),
                    }
                    v.join("*")
                }
            };
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}*{vars}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = CoeffPoly<BigInt>;

    fn c(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let mut p = P::monomial(c(2), 1, 0);
        p.add_term(Mono::new(1, 0), &c(-2));
        assert!(p.is_zero());
        assert!(P::monomial(c(0), 3, 3).is_zero());
    }

    #[test]
    fn laurent_product_collapses_to_constant() {
        // (a + 1/a)(a - 1/a) = a^2 - a^-2
        let x = P::from_terms([(1, 0, c(1)), (-1, 0, c(1))]);
        let y = P::from_terms([(1, 0, c(1)), (-1, 0, c(-1))]);
        let z = x.mul(&y);
        assert_eq!(z, P::from_terms([(2, 0, c(1)), (-2, 0, c(-1))]));
        assert_eq!(z.to_string(), "-a^-2 + a^2");
    }

    #[test]
    fn display_mixes_variables() {
        let p = P::from_terms([(0, 0, c(1)), (0, 1, c(-1)), (2, 3, c(5))]);
        assert_eq!(p.to_string(), "1 - b + 5*a^2*b^3");
        assert_eq!(p.get(2, 3), c(5));
        assert_eq!(p.as_constant(), None);
    }
}
