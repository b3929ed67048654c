//! Canonical JSON form: `{denom, prec, terms: [{e, coeff: [{a, b, c}]}]}`.
//!
//! Terms are sorted by `e` and monomials by `(a, b)`; coefficients are decimal
//! strings so arbitrary-size integers and rationals round-trip exactly.

use serde::{Deserialize, Serialize};

use super::coeff::{CoeffPoly, Mono};
use super::qseries::QSeries;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub denom: u32,
    pub prec: i64,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub e: i64,
    pub coeff: Vec<MonoRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoRecord {
    pub a: i32,
    pub b: u32,
    pub c: String,
}

impl SeriesRecord {
    pub fn from_series<R: Coefficient>(x: &QSeries<R>) -> Self {
        let terms = x
            .iter()
            .map(|(e, p)| TermRecord {
                e,
                coeff: p
                    .iter()
                    .map(|(m, c)| MonoRecord {
                        a: m.a,
                        b: m.b,
                        c: c.to_string(),
                    })
                    .collect(),
            })
            .collect();
        Self {
            denom: x.denom(),
            prec: x.prec(),
            terms,
        }
    }

    pub fn to_series<R: Coefficient>(&self) -> Result<QSeries<R>> {
        if self.denom == 0 {
            return Err(Error::Parse("denom must be positive".into()));
        }
        let mut out = QSeries::zero(self.denom, self.prec);
        for t in &self.terms {
            if t.e < 0 || t.e > self.prec {
                return Err(Error::Parse(format!(
                    "exponent {} outside 0..={}",
                    t.e, self.prec
                )));
            }
            let mut p = CoeffPoly::zero();
            for m in &t.coeff {
                let c = R::parse_decimal(&m.c)
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", m.c)))?;
                p.add_term(Mono::new(m.a, m.b), &c);
            }
            out.add_to(t.e, &p);
        }
        Ok(out)
    }
}

/// Single-line canonical JSON.
pub fn to_json<R: Coefficient>(x: &QSeries<R>) -> String {
    serde_json::to_string(&SeriesRecord::from_series(x)).expect("records always serialize")
}

pub fn from_json<R: Coefficient>(s: &str) -> Result<QSeries<R>> {
    let rec: SeriesRecord = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    rec.to_series()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn canonical_text_is_sorted_and_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = CoeffPoly::from_terms([(1, 0, BigInt::from(1)), (-1, 0, big.clone())]);
        let x = QSeries::from_terms(4, 9, [(4, p.clone()), (1, CoeffPoly::one())]).unwrap();
        let s = to_json(&x);
        assert_eq!(
            s,
            r#"{"denom":4,"prec":9,"terms":[{"e":1,"coeff":[{"a":0,"b":0,"c":"1"}]},{"e":4,"coeff":[{"a":-1,"b":0,"c":"123456789012345678901234567890"},{"a":1,"b":0,"c":"1"}]}]}"#
        );
        assert_eq!(from_json::<BigInt>(&s).unwrap(), x);
    }

    #[test]
    fn malformed_records_are_parse_errors() {
        assert!(matches!(from_json::<BigInt>("{"), Err(Error::Parse(_))));
        let bad = r#"{"denom":1,"prec":2,"terms":[{"e":5,"coeff":[]}]}"#;
        assert!(matches!(from_json::<BigInt>(bad), Err(Error::Parse(_))));
    }
}
