use clap::ValueEnum;
use qdissect::partitions::{
    verify_durfee_coefficients, verify_durfee_rectangle, verify_odd_difference, PartitionReport,
};

use crate::output::Sink;
use crate::verify::parse_range;
use crate::{Outcome, OutputArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Classify partitions by Durfee s-rectangle and check each class.
    Durfee,
    /// Check the three Durfee-rectangle expressions coefficient by coefficient.
    Coefficients,
    /// Distinct parts with odd consecutive differences.
    OddDifferences,
    All,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(value_enum, default_value_t = Which::All)]
    check: Which,
    /// Values of s for the Durfee checks.
    #[arg(long, value_parser = parse_range, default_value = "1..5")]
    s: (u32, u32),
    /// Largest weight for the Durfee checks.
    #[arg(long, default_value_t = 20)]
    max_weight: u32,
    /// Largest weight for the odd-difference check.
    #[arg(long, default_value_t = 40)]
    odd_max_weight: u32,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn run(args: Args) -> Outcome {
    let mut reports: Vec<PartitionReport> = Vec::new();
    let durfee = matches!(args.check, Which::Durfee | Which::All);
    let coeffs = matches!(args.check, Which::Coefficients | Which::All);
    for s in args.s.0..=args.s.1 {
        if durfee {
            reports.push(verify_durfee_rectangle(s, args.max_weight)?);
        }
        if coeffs {
            reports.push(verify_durfee_coefficients(s, args.max_weight)?);
        }
    }
    if matches!(args.check, Which::OddDifferences | Which::All) {
        reports.push(verify_odd_difference(args.odd_max_weight)?);
    }
    let mut sink = Sink::open(&args.output)?;
    let mut ok = true;
    for r in &reports {
        ok &= r.passed();
        let mut text = r.summary_line();
        for m in r.mismatches.iter().take(5) {
            text.push_str(&format!(
                "\n    {} weight {} parts {} largest {}: counted {}, series {}",
                m.source, m.weight, m.parts, m.largest, m.counted, m.series
            ));
        }
        for n in &r.notes {
            text.push_str(&format!("\n    note: {n}"));
        }
        sink.emit(&text, r)?;
    }
    Ok(ok)
}
