//! Brute-force partition oracles.
//!
//! Everything counted here comes from explicit enumeration; the generating
//! functions it is compared against come from the series engine. Keep the two
//! independent: nothing in this module may build a count from a series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{durfee_class_spec, durfee_expressions};
use crate::qfunctions::{named_series, sum_expand};
use crate::Series;

/// All partitions of `n`, parts in non-increasing order.
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n` with exactly `m` parts and largest part exactly `r`.
pub fn count_partitions(n: u32, m: u32, r: u32) -> u64 {
    // parts of `rest` into exactly `k` parts, each at most `max`
    fn fill(rest: u32, k: u32, max: u32) -> u64 {
        if k == 0 {
            return u64::from(rest == 0);
        }
        if rest < k || rest > k * max {
            return 0;
        }
        (1..=max.min(rest)).map(|p| fill(rest - p, k - 1, p)).sum()
    }
    if m == 0 || r == 0 {
        return u64::from(n == 0 && m == 0 && r == 0);
    }
    if r > n {
        return 0;
    }
    fill(n - r, m - 1, r)
}

/// Partition with distinct parts whose consecutive differences are all odd.
pub fn has_odd_differences(parts: &[u32]) -> bool {
    parts
        .windows(2)
        .all(|w| w[0] > w[1] && (w[0] - w[1]) % 2 == 1)
}

/// Durfee `s`-rectangle class of a partition.
///
/// Class `(n, 0)`: an `n x sn` rectangle fits and the rest lies below it or to its
/// right with `lambda_(n+1) <= sn`. Class `(n, k)` with `1 <= k < s`: an
/// `(n+1) x (sn+k)` rectangle fits exactly, `lambda_(n+1) = sn + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DurfeeClass {
    pub n: u32,
    pub k: u32,
}

impl DurfeeClass {
    pub fn rows(&self) -> u32 {
        self.n + u32::from(self.k != 0)
    }

    pub fn cols(&self, s: u32) -> u32 {
        s * self.n + self.k
    }
}

/// Every class whose defining inequalities hold for `parts`. A well-posed
/// classification returns exactly one.
pub fn durfee_classes(parts: &[u32], s: u32) -> Vec<DurfeeClass> {
    assert!(s >= 1, "s must be positive");
    // lambda_i, 1-based, zero past the end
    let lam = |i: u32| -> u32 {
        if i == 0 {
            u32::MAX
        } else {
            parts.get(i as usize - 1).copied().unwrap_or(0)
        }
    };
    let mut out = Vec::new();
    for n in 0..=parts.len() as u32 {
        let w = s * n;
        if lam(n) >= w && lam(n + 1) <= w {
            out.push(DurfeeClass { n, k: 0 });
        }
        for k in 1..s {
            if lam(n) >= w + k && lam(n + 1) == w + k {
                out.push(DurfeeClass { n, k });
            }
        }
    }
    out
}

/// One coefficient where enumeration and series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub source: String,
    pub weight: i64,
    /// Exponent of `b`: number of parts.
    pub parts: u32,
    /// Exponent of `a`: largest part.
    pub largest: i32,
    pub counted: String,
    pub series: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub max_weight: u32,
    /// Number of `(weight, parts, largest)` cells compared, over all sources.
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
}

impl PartitionReport {
    fn new(check: &str, s: Option<u32>, max_weight: u32) -> Self {
        Self {
            check: check.into(),
            s,
            max_weight,
            compared: 0,
            mismatches: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.compared > 0
    }

    pub fn summary_line(&self) -> String {
        let s = self.s.map(|s| format!(" s={s}")).unwrap_or_default();
        let status = if self.passed() {
            "PASS".to_string()
        } else {
            format!("FAIL ({} mismatches)", self.mismatches.len())
        };
        format!(
            "{}{s} weight<={} {status}, {} cells",
            self.check, self.max_weight, self.compared
        )
    }

    /// Compares enumerated counts, keyed by `(weight, parts, largest)`, against
    /// every coefficient of `series` through `max_weight`.
    fn compare(&mut self, source: &str, counted: &BTreeMap<(i64, u32, i32), u64>, series: &Series) {
        let w = i64::from(self.max_weight);
        let mut found = BTreeMap::new();
        for (e, poly) in series.iter().filter(|(e, _)| *e <= w) {
            for (m, c) in poly.iter() {
                found.insert((e, m.b, m.a), c.clone());
            }
        }
        let mut keys: Vec<_> = counted.keys().chain(found.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            let want = BigInt::from(counted.get(&key).copied().unwrap_or(0));
            let got = found.get(&key).cloned().unwrap_or_default();
            self.compared += 1;
            if want != got {
                self.mismatches.push(Mismatch {
                    source: source.into(),
                    weight: key.0,
                    parts: key.1,
                    largest: key.2,
                    counted: want.to_string(),
                    series: got.to_string(),
                });
            }
        }
    }
}

fn check_series_prec(series: &Series, max_weight: u32) -> Result<()> {
    if series.prec() < i64::from(max_weight) || series.denom() != 1 {
        return Err(Error::Domain(format!(
            "generating function known through q^{} only, need q^{max_weight}",
            series.prec()
        )));
    }
    Ok(())
}

/// Classifies every partition of weight at most `max_weight` by its Durfee
/// `s`-rectangle and checks each class against the coefficients of its
/// generating function. A partition in zero or several classes is a mismatch.
pub fn verify_durfee_rectangle(s: u32, max_weight: u32) -> Result<PartitionReport> {
    if s == 0 {
        return Err(Error::Usage("s must be positive".into()));
    }
    let mut report = PartitionReport::new("durfee-rectangle", Some(s), max_weight);
    let mut tallies: BTreeMap<DurfeeClass, BTreeMap<(i64, u32, i32), u64>> = BTreeMap::new();
    let mut bad = 0usize;
    for w in 0..=max_weight {
        for p in partitions_of(w) {
            let classes = durfee_classes(&p, s);
            if classes.len() != 1 {
                bad += 1;
                report.mismatches.push(Mismatch {
                    source: format!("classification of {p:?}"),
                    weight: i64::from(w),
                    parts: p.len() as u32,
                    largest: p.first().copied().unwrap_or(0) as i32,
                    counted: "1".into(),
                    series: classes.len().to_string(),
                });
                continue;
            }
            let key = (
                i64::from(w),
                p.len() as u32,
                p.first().copied().unwrap_or(0) as i32,
            );
            *tallies
                .entry(classes[0])
                .or_default()
                .entry(key)
                .or_default() += 1;
        }
    }
    let prec = i64::from(max_weight);
    let mut n = 0u32;
    while s * n * n <= max_weight {
        for k in 0..s {
            let class = DurfeeClass { n, k };
            if i64::from(class.rows()) * i64::from(class.cols(s)) > prec {
                continue;
            }
            let spec = durfee_class_spec(s, k)
                .from(i64::from(n))
                .upto(i64::from(n));
            let series: Series = sum_expand(&spec, prec)?;
            check_series_prec(&series, max_weight)?;
            let empty = BTreeMap::new();
            report.compare(
                &format!("class ({n},{k})"),
                tallies.get(&class).unwrap_or(&empty),
                &series,
            );
            tallies.remove(&class);
        }
        n += 1;
    }
    // classes too heavy to have a series term cannot hold any partition either
    for (class, t) in tallies {
        for (&(weight, parts, largest), &c) in &t {
            report.mismatches.push(Mismatch {
                source: format!("class ({},{})", class.n, class.k),
                weight,
                parts,
                largest,
                counted: c.to_string(),
                series: "0".into(),
            });
        }
    }
    if bad > 0 {
        report
            .notes
            .push(format!("{bad} partitions not in exactly one class"));
    }
    Ok(report)
}

/// Checks that the coefficient of `b^m a^r q^n` in each of the three
/// Durfee-rectangle expressions equals the number of partitions of `n` with
/// `m` parts and largest part `r`, for every `n <= max_weight`.
pub fn verify_durfee_coefficients(s: u32, max_weight: u32) -> Result<PartitionReport> {
    if s == 0 {
        return Err(Error::Usage("s must be positive".into()));
    }
    let mut counted = BTreeMap::new();
    for n in 0..=max_weight {
        for m in 0..=n {
            for r in 0..=n {
                let c = count_partitions(n, m, r);
                if c > 0 {
                    counted.insert((i64::from(n), m, r as i32), c);
                }
            }
        }
    }
    let mut report = PartitionReport::new("durfee-coefficients", Some(s), max_weight);
    let names = ["durfee-square", "durfee-rectangle", "andrews"];
    for (name, series) in names
        .iter()
        .zip(durfee_expressions(s, i64::from(max_weight))?)
    {
        check_series_prec(&series, max_weight)?;
        report.compare(name, &counted, &series);
    }
    Ok(report)
}

/// Compares `sum_(n>=1) q^(n(n-1)/2) / (q^2;q^2)_n` with a count of partitions
/// into distinct parts with odd consecutive differences. The empty partition
/// counts at weight 0, matching the series' constant term.
pub fn verify_odd_difference(max_weight: u32) -> Result<PartitionReport> {
    let mut counted = BTreeMap::new();
    for w in 0..=max_weight {
        let c = partitions_of(w)
            .iter()
            .filter(|p| has_odd_differences(p))
            .count() as u64;
        if c > 0 {
            counted.insert((i64::from(w), 0, 0), c);
        }
    }
    let series: Series = named_series("a179080", None, i64::from(max_weight))?;
    check_series_prec(&series, max_weight)?;
    let mut report = PartitionReport::new("odd-differences", None, max_weight);
    report.compare("sum q^(n(n-1)/2)/(q^2;q^2)_n", &counted, &series);
    Ok(report)
}
