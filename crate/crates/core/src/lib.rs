//! Exact truncated q-series arithmetic over `Z[a, 1/a, b]`, builders for
//! Rogers-Ramanujan type sums, products and theta functions, an identity
//! registry with an exact verifier, partition oracles, and a numeric toolkit
//! for `q -> 1` asymptotics.
//!
//! The engine is generic over the coefficient ring ([`Coefficient`]) and the
//! numeric toolkit over the float type ([`Real`]); the aliases below fix the
//! usual choices.

pub mod asymptotics;
pub mod error;
pub mod identities;
pub mod partitions;
pub mod qfunctions;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Coefficient, Real};
pub use series::{CoeffPoly, Mono, ParamMonomial, QSeries};

/// Integer-coefficient series, the default for identity verification.
pub type Series = QSeries<num_bigint::BigInt>;
/// Rational-coefficient series, used when a specialization divides.
pub type RatSeries = QSeries<num_rational::BigRational>;
pub type Poly = CoeffPoly<num_bigint::BigInt>;
