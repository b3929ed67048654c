use num_bigint::BigInt;
use num_rational::BigRational;
use qdissect::qfunctions::{named_series, sum_expand, SumSpec, NAMED_IDS};
use qdissect::series::{substitute, SeriesRecord, Subst};
use qdissect::{Coefficient, QSeries, Series};

use crate::output::Sink;
use crate::{Failure, Outcome, OutputArgs};

#[derive(clap::Args)]
pub struct Args {
    /// Named series; see --list.
    #[arg(required_unless_present_any = ["spec", "list"], conflicts_with = "spec")]
    id: Option<String>,
    /// A sum spec as JSON, e.g. '{"denom":1,"t_exp":{"c2":1},"pochs":[...]}'.
    #[arg(long)]
    spec: Option<String>,
    /// Parameter for the families that take one (theta, bressoud).
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, default_value_t = 50)]
    prec: i64,
    /// Set a to an integer or fraction such as -1 or 1/2.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Set b to an integer or fraction.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Print the known series ids and exit.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_value(s: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::Usage(format!("cannot read {s:?} as an integer or fraction"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            s.trim().parse().map_err(|_| bad())?,
        )),
    }
}

fn specialize<R: Coefficient>(
    x: &QSeries<R>,
    a: Option<R>,
    b: Option<R>,
) -> Result<QSeries<R>, Failure> {
    if a.is_none() && b.is_none() {
        return Ok(x.clone());
    }
    let (a, b) = (a.map(Subst::value), b.map(Subst::value));
    Ok(substitute(x, a.as_ref(), b.as_ref(), None)?)
}

fn emit<R: Coefficient>(sink: &mut Sink, x: &QSeries<R>) -> Outcome {
    sink.emit(&x.to_string(), &SeriesRecord::from_series(x))?;
    Ok(true)
}

pub fn run(args: Args) -> Outcome {
    let mut sink = Sink::open(&args.output)?;
    if args.list {
        let text: Vec<String> = NAMED_IDS
            .iter()
            .map(|(id, what)| format!("{id:<16} {what}"))
            .collect();
        let record: Vec<_> = NAMED_IDS
            .iter()
            .map(|(id, what)| serde_json::json!({"id": id, "series": what}))
            .collect();
        sink.emit(&text.join("\n"), &record)?;
        return Ok(true);
    }
    if args.prec < 0 {
        return Err(Failure::Usage("precision must be non-negative".into()));
    }
    let x: Series = match (&args.spec, &args.id) {
        (Some(text), _) => {
            let spec: SumSpec =
                serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad spec: {e}")))?;
            sum_expand(&spec, args.prec)?
        }
        (None, Some(id)) => named_series(id, args.s, args.prec)?,
        (None, None) => unreachable!("clap requires an id or a spec"),
    };
    let a = args.a.as_deref().map(parse_value).transpose()?;
    let b = args.b.as_deref().map(parse_value).transpose()?;
    let integral = |v: &Option<BigRational>| v.as_ref().is_none_or(|v| v.is_integer());
    if integral(&a) && integral(&b) {
        let int = |v: Option<BigRational>| v.map(|v| v.to_integer());
        let y = specialize(&x, int(a), int(b))?;
        return emit(&mut sink, &y);
    }
    let y = specialize(&x.map_ring(|c| BigRational::from_integer(c.clone())), a, b)?;
    emit(&mut sink, &y)
}
