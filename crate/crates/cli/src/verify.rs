use std::collections::BTreeMap;
use std::sync::mpsc;

use qdissect::identities::{find_entry, jobs, run_job, IdentityReport, Job, Perturbation};
use rayon::prelude::*;

use crate::output::Sink;
use crate::{Failure, Outcome, OutputArgs};

#[derive(clap::Args)]
pub struct Args {
    /// Registry ids to run; repeat or separate with commas.
    #[arg(long, value_delimiter = ',')]
    id: Vec<String>,
    /// Every registry entry (the default when no --id is given).
    #[arg(long, conflicts_with = "id")]
    all: bool,
    /// Values of s: a single value or an inclusive range such as 1..5.
    #[arg(long, value_parser = parse_range)]
    s: Option<(u32, u32)>,
    /// Restrict the second integer parameter (n, m or mu) to one value.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 50)]
    prec: i64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Test hook: add 1 to side 1 of the first check at this exponent.
    #[arg(long)]
    perturb: Option<i64>,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let num = |x: &str| {
        x.trim()
            .parse::<u32>()
            .map_err(|_| format!("cannot read {x:?} as a non-negative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

fn select(args: &Args) -> Result<Vec<Job>, Failure> {
    let filter = if args.all || args.id.is_empty() {
        None
    } else {
        Some(args.id.as_slice())
    };
    if let Some(ids) = filter {
        for id in ids {
            let entry = find_entry(id)?;
            if let Some((lo, hi)) = args.s {
                if entry.s_values.is_empty() {
                    return Err(Failure::Usage(format!("{id} takes no s")));
                }
                if let Some(s) = (lo..=hi).find(|s| !entry.s_values.contains(s)) {
                    return Err(Failure::Usage(format!(
                        "{id} supports s in {:?}, not {s}",
                        entry.s_values
                    )));
                }
            }
            if let Some(n) = args.n {
                match entry.n_param {
                    Some((_, values)) if values.contains(&n) => {}
                    Some((name, values)) => {
                        return Err(Failure::Usage(format!(
                            "{id} supports {name} in {values:?}, not {n}"
                        )))
                    }
                    None => return Err(Failure::Usage(format!("{id} takes no second parameter"))),
                }
            }
        }
    }
    let picked = jobs(u32::MAX, filter)
        .into_iter()
        .filter(|j| match (args.s, j.params.s) {
            (Some((lo, hi)), Some(s)) => (lo..=hi).contains(&s),
            _ => true,
        })
        .filter(|j| match (args.n, j.params.n) {
            (Some(want), Some(n)) => n == want,
            _ => true,
        })
        .collect();
    Ok(picked)
}

pub fn run(args: Args) -> Outcome {
    if args.prec < 0 {
        return Err(Failure::Usage("precision must be non-negative".into()));
    }
    let selected = select(&args)?;
    let perturb = args.perturb.map(|e| Perturbation::at(e, 1));
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.jobs {
        if n == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Failure::Usage(e.to_string()))?;
    let mut sink = Sink::open(&args.output)?;

    // Workers finish in any order; reports are printed in job order as soon as
    // every earlier one is in.
    let (tx, rx) = mpsc::channel::<(usize, IdentityReport)>();
    let prec = args.prec;
    let mut all_passed = true;
    std::thread::scope(|scope| -> Result<(), Failure> {
        let jobs = &selected;
        let perturb = perturb.as_ref();
        let pool = &pool;
        scope.spawn(move || {
            pool.install(|| {
                jobs.par_iter()
                    .enumerate()
                    .for_each_with(tx, |tx, (i, job)| {
                        let _ = tx.send((i, run_job(job, prec, perturb)));
                    });
            });
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, report) in rx {
            pending.insert(i, report);
            while let Some(report) = pending.remove(&next) {
                all_passed &= report.passed();
                sink.emit(&render(&report), &report)?;
                next += 1;
            }
        }
        Ok(())
    })?;
    Ok(all_passed)
}

fn render(r: &IdentityReport) -> String {
    let mut out = r.summary_line();
    for n in &r.notes {
        out.push_str(&format!("\n    note: {n}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3"), Ok((3, 3)));
        assert_eq!(parse_range("1..5"), Ok((1, 5)));
        assert_eq!(parse_range("2..=4"), Ok((2, 4)));
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("a..b").is_err());
    }
}
