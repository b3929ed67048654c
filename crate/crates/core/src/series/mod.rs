//! Exact truncated series over `R[a, 1/a, b]`.

mod coeff;
mod qseries;
mod serial;
mod subst;

pub use coeff::{CoeffPoly, Mono};
pub use qseries::{ParamMonomial, QSeries};
pub use serial::{from_json, to_json, SeriesRecord};
pub use subst::{input_prec_for_shift, specialize, substitute, Subst};
