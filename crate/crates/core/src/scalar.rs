//! Scalar traits: an exact coefficient ring for series arithmetic and a
//! floating-point type for the asymptotic toolkit.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, One, ToPrimitive, Zero};

/// Exact ring of series coefficients.
///
/// Implemented for `BigInt` (the default), `BigRational` (used when a
/// specialization needs division) and `i64` (cheap, for small tests).
pub trait Coefficient:
    Num
    + Clone
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    /// Parses the decimal form produced by `Display`.
    fn parse_decimal(s: &str) -> Option<Self> {
        Self::from_str_radix(s.trim(), 10).ok()
    }

    /// `self^e` for `e >= 0`, or `inverse^(-e)` for negative `e`.
    fn checked_pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 {
            self.try_inverse()?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc *= &sq;
            }
            k >>= 1;
            if k > 0 {
                let s2 = sq.clone();
                sq *= &s2;
            }
        }
        Some(acc)
    }
}

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self.clone()).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coefficient for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coefficient for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn try_inverse(&self) -> Option<Self> {
        match *self {
            1 | -1 => Some(*self),
            _ => None,
        }
    }
}

/// Floating-point scalar for the numeric toolkit (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
