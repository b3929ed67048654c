//! Exact comparison of built identity sides and the resulting reports.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::registry::{find_entry, IdentityEntry, REGISTRY};
use crate::error::{usage, Result};
use crate::series::Mono;
use crate::{Poly, Series};

/// One named side of a check.
#[derive(Clone, Debug)]
pub struct Side {
    pub name: String,
    pub series: Series,
}

impl Side {
    pub fn new(name: impl Into<String>, series: Series) -> Self {
        Self {
            name: name.into(),
            series,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Check {
    /// All sides agree through the common precision.
    Equal { label: String, sides: Vec<Side> },
    /// Every coefficient is divisible by `modulus`.
    VanishesMod {
        label: String,
        series: Series,
        modulus: i64,
    },
}

impl Check {
    pub fn equal(label: impl Into<String>, sides: Vec<Side>) -> Self {
        Check::Equal {
            label: label.into(),
            sides,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Check::Equal { label, .. } | Check::VanishesMod { label, .. } => label,
        }
    }
}

/// Output of an entry builder: the denominator `D` and the checks to run.
#[derive(Clone, Debug)]
pub struct Built {
    pub denom: u32,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

/// Adds `delta * a^a b^b t^exponent` to one side of one check before comparing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    #[serde(default)]
    pub check: usize,
    #[serde(default = "one")]
    pub side: usize,
    pub exponent: i64,
    #[serde(default)]
    pub a: i32,
    #[serde(default)]
    pub b: u32,
    #[serde(default = "one_i64")]
    pub delta: i64,
}

fn one() -> usize {
    1
}

fn one_i64() -> i64 {
    1
}

impl Perturbation {
    pub fn at(exponent: i64, delta: i64) -> Self {
        Self {
            check: 0,
            side: 1,
            exponent,
            a: 0,
            b: 0,
            delta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstDiff {
    pub check: String,
    pub sides: (String, String),
    pub exponent: i64,
    pub diff: String,
}

/// Verdict of one check inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub label: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_exponent: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    #[serde(flatten)]
    pub params: Params,
    pub prec: i64,
    pub denom: u32,
    pub status: Status,
    pub first_diff: Option<FirstDiff>,
    #[serde(default)]
    pub checks: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One human-readable line: id, parameters, verdict, precision, time.
    pub fn summary_line(&self) -> String {
        let mut params = String::new();
        if let Some(s) = self.params.s {
            params.push_str(&format!(" s={s}"));
        }
        if let Some(n) = self.params.n {
            params.push_str(&format!(" n={n}"));
        }
        let verdict = match self.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail => match &self.first_diff {
                Some(d) => format!(
                    "FAIL at t^{} in {} ({} vs {}): {}",
                    d.exponent, d.check, d.sides.0, d.sides.1, d.diff
                ),
                None => format!("FAIL ({})", self.notes.join("; ")),
            },
        };
        format!(
            "{}{params} D={} P={} {verdict} {:.1}ms",
            self.id, self.denom, self.prec, self.elapsed_ms
        )
    }
}

/// Checks the parameters against the entry and returns the precision it will run at.
fn prepare(entry: &IdentityEntry, params: Params, prec: i64) -> Result<i64> {
    if prec < 0 {
        return usage("precision must be non-negative");
    }
    match (params.s, entry.s_values.is_empty()) {
        (Some(s), false) if !entry.s_values.contains(&s) => {
            return usage(format!(
                "{} supports s in {:?}, not {s}",
                entry.id, entry.s_values
            ));
        }
        (None, false) => return usage(format!("{} needs a parameter s", entry.id)),
        (Some(_), true) => return usage(format!("{} takes no parameter s", entry.id)),
        _ => {}
    }
    match (params.n, entry.n_param) {
        (Some(n), Some((name, values))) if !values.contains(&n) => {
            return usage(format!(
                "{} supports {name} in {values:?}, not {n}",
                entry.id
            ));
        }
        (None, Some((name, _))) => return usage(format!("{} needs a parameter {name}", entry.id)),
        (Some(_), None) => return usage(format!("{} takes no second parameter", entry.id)),
        _ => {}
    }
    Ok(prec.max(entry.min_prec))
}

/// Builds the sides of one identity instance without comparing them.
pub fn build(id: &str, params: Params, prec: i64) -> Result<Built> {
    let entry = find_entry(id)?;
    let prec = prepare(entry, params, prec)?;
    (entry.build)(params, prec)
}

/// Builds and compares one identity instance.
pub fn verify(id: &str, params: Params, prec: i64) -> Result<IdentityReport> {
    verify_perturbed(id, params, prec, None)
}

pub fn verify_perturbed(
    id: &str,
    params: Params,
    prec: i64,
    perturb: Option<&Perturbation>,
) -> Result<IdentityReport> {
    let entry = find_entry(id)?;
    let prec = prepare(entry, params, prec)?;
    Ok(run(entry, params, prec, perturb))
}

fn run(
    entry: &IdentityEntry,
    params: Params,
    prec: i64,
    perturb: Option<&Perturbation>,
) -> IdentityReport {
    let start = Instant::now();
    let mut report = IdentityReport {
        id: entry.id.to_string(),
        params,
        prec,
        denom: 1,
        status: Status::Pass,
        first_diff: None,
        checks: Vec::new(),
        notes: Vec::new(),
        elapsed_ms: 0.0,
    };
    match (entry.build)(params, prec) {
        Ok(mut built) => {
            if let Some(p) = perturb {
                apply_perturbation(&mut built, p, &mut report.notes);
            }
            report.denom = built.denom;
            report.notes.extend(built.notes.iter().cloned());
            compare(&built, prec, &mut report);
        }
        Err(e) => {
            report.status = Status::Fail;
            report.notes.push(format!("build error: {e}"));
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn apply_perturbation(built: &mut Built, p: &Perturbation, notes: &mut Vec<String>) {
    let target = match built.checks.get_mut(p.check) {
        Some(Check::Equal { sides, .. }) => sides.get_mut(p.side).map(|s| &mut s.series),
        Some(Check::VanishesMod { series, .. }) => Some(series),
        None => None,
    };
    match target {
        Some(x) => {
            *x = x.perturbed(p.exponent, p.a, p.b, p.delta);
            notes.push(format!(
                "perturbed check {} side {} by {} a^{} b^{} t^{}",
                p.check, p.side, p.delta, p.a, p.b, p.exponent
            ));
        }
        None => notes.push(format!(
            "perturbation target check {} side {} does not exist",
            p.check, p.side
        )),
    }
}

fn compare(built: &Built, prec: i64, report: &mut IdentityReport) {
    let mut common = prec;
    for check in &built.checks {
        match check {
            Check::Equal { sides, .. } => {
                for s in sides {
                    common = common.min(s.series.prec());
                }
            }
            Check::VanishesMod { series, .. } => common = common.min(series.prec()),
        }
    }
    if common < prec {
        report
            .notes
            .push(format!("sides only known through t^{common}"));
    }
    report.prec = common;
    let mut best: Option<FirstDiff> = None;
    for check in &built.checks {
        let found = first_discrepancy(check, common);
        report.checks.push(CheckOutcome {
            label: check.label().to_string(),
            status: if found.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            first_exponent: found.as_ref().map(|d| d.exponent),
        });
        if let Some(d) = found {
            if best.as_ref().is_none_or(|b| d.exponent < b.exponent) {
                best = Some(d);
            }
        }
    }
    if let Some(d) = best {
        report.status = Status::Fail;
        report.first_diff = Some(d);
    }
}

/// Lowest exponent at which the check fails, across all of its side pairs.
fn first_discrepancy(check: &Check, common: i64) -> Option<FirstDiff> {
    let mut best: Option<FirstDiff> = None;
    let mut consider = |d: FirstDiff| {
        if best.as_ref().is_none_or(|b| d.exponent < b.exponent) {
            best = Some(d);
        }
    };
    match check {
        Check::Equal { label, sides } => {
            let base = sides.first()?;
            let base_series = base.series.truncate(common);
            for other in &sides[1..] {
                let diff = &other.series.truncate(common) - &base_series;
                let first = diff.iter().next().map(|(e, p)| (e, p.to_string()));
                if let Some((e, p)) = first {
                    consider(FirstDiff {
                        check: label.clone(),
                        sides: (other.name.clone(), base.name.clone()),
                        exponent: e,
                        diff: p,
                    });
                }
            }
        }
        Check::VanishesMod {
            label,
            series,
            modulus,
        } => {
            let m = BigInt::from(*modulus);
            let bad = series.truncate(common).iter().find_map(|(e, p)| {
                let rest: Poly = Poly::from_terms(
                    p.iter()
                        .filter(|(_, c)| !(*c % &m).is_zero())
                        .map(|(mo, c): (&Mono, &BigInt)| (mo.a, mo.b, c.clone())),
                );
                (!rest.is_zero()).then_some((e, rest))
            });
            if let Some((e, p)) = bad {
                consider(FirstDiff {
                    check: label.clone(),
                    sides: (format!("series mod {modulus}"), "0".into()),
                    exponent: e,
                    diff: p.to_string(),
                });
            }
        }
    }
    best
}

/// A single unit of work for [`verify_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Job {
    pub id: &'static str,
    pub params: Params,
}

/// Every `(entry, s, n)` combination selected by `filter` with `s <= s_max`, in
/// registry order. `None` selects every entry; an empty filter selects nothing.
pub fn jobs(s_max: u32, filter: Option<&[String]>) -> Vec<Job> {
    let mut out = Vec::new();
    for entry in REGISTRY {
        if let Some(f) = filter {
            if !f.iter().any(|id| id == entry.id) {
                continue;
            }
        }
        let s_list: Vec<Option<u32>> = if entry.s_values.is_empty() {
            vec![None]
        } else {
            entry
                .s_values
                .iter()
                .filter(|s| **s <= s_max)
                .map(|s| Some(*s))
                .collect()
        };
        let n_list: Vec<Option<u32>> = match entry.n_param {
            Some((_, values)) => values.iter().map(|n| Some(*n)).collect(),
            None => vec![None],
        };
        for &s in &s_list {
            for &n in &n_list {
                out.push(Job {
                    id: entry.id,
                    params: Params { s, n },
                });
            }
        }
    }
    out
}

pub fn run_job(job: &Job, prec: i64, perturb: Option<&Perturbation>) -> IdentityReport {
    let entry = find_entry(job.id).expect("jobs come from the registry");
    let prec = prec.max(entry.min_prec);
    run(entry, job.params, prec, perturb)
}

/// Runs every selected job in parallel; reports come back in job order.
pub fn verify_all(prec: i64, s_max: u32, filter: Option<&[String]>) -> Vec<IdentityReport> {
    use rayon::prelude::*;
    jobs(s_max, filter)
        .par_iter()
        .map(|j| run_job(j, prec, None))
        .collect()
}
