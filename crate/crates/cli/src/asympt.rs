use clap::ValueEnum;
use qdissect::asymptotics::{
    check_dissection_chain, check_product_asymptotic, check_rogers_chain, validate_schedule,
    DEFAULT_SCHEDULE, DEFAULT_TOL,
};

use crate::output::Sink;
use crate::{Outcome, OutputArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Product of two dilogarithm-type sums against its elementary prediction.
    Product,
    /// Sum of two products, 1/(q)_inf and the theta function at b = 1.
    Chain,
    /// Rogers' identity asymptotics and the dilogarithm evaluations behind them.
    RiChain,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(value_enum)]
    check: Which,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 2)]
    s: u32,
    /// Increasing q values in (0, 1), comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SCHEDULE)]
    schedule: Vec<f64>,
    /// Largest |ratio - 1| accepted at the last q.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn run(args: Args) -> Outcome {
    validate_schedule(&args.schedule)?;
    let check = match args.check {
        Which::Product => check_product_asymptotic(args.a, args.s, &args.schedule, args.tol)?,
        Which::Chain => check_dissection_chain(args.a, &args.schedule, args.tol)?,
        Which::RiChain => check_rogers_chain(&args.schedule, args.tol)?,
    };
    let mut sink = Sink::open(&args.output)?;
    sink.emit(&check.render(), &check)?;
    Ok(check.passed())
}
