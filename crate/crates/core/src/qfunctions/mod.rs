//! Builders for Pochhammer products, one-index sums, theta functions and the
//! named series used by the identity registry.

mod ctx;
mod named;
mod sumspec;
mod theta;

pub use ctx::{poch_finite, poch_infinite, SeriesCtx};
pub use named::{
    bressoud_lhs, bressoud_rhs, mcintosh_lhs_spec, mcintosh_rhs_spec, named_series, rr_g, rr_h,
    rr_sum, NAMED_IDS,
};
pub use sumspec::{one_minus_b, sum_expand, Affine, PochFactor, Quadratic, SumSpec, SumTerm};
pub use theta::{correction_term, partial_theta, theta_full, theta_sum, ThetaSide};
