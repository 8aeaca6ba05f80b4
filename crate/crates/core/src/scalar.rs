//! The scalar abstraction shared by the exact and floating-point code paths.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive};

use crate::Rational;

/// A field element the series machinery can compute with.
///
/// Implemented for [`Rational`] (exact) and for `f32`/`f64`.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// Nearest representable value of an exact rational.
    fn from_rational(r: &Rational) -> Self;

    /// `Some(k)` when the value equals `-k` for a non-negative integer `k`.
    fn nonpositive_integer(&self) -> Option<u64>;

    /// Magnitude as `f64`, used for convergence tests and reporting.
    fn magnitude(&self) -> f64;

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }

    fn from_usize(v: usize) -> Self {
        Self::from_int(v as i64)
    }
}

impl Scalar for Rational {
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && !self.is_positive() {
            (-self.numer()).to_u64()
        } else {
            None
        }
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn from_rational(r: &Rational) -> Self {
                r.to_f64().map(|v| v as $t).unwrap_or(<$t>::NAN)
            }

            fn nonpositive_integer(&self) -> Option<u64> {
                if self.is_finite() && *self <= 0.0 && self.fract() == 0.0 {
                    Some((-*self) as u64)
                } else {
                    None
                }
            }

            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// `true` when the value is exactly zero (no tolerance, even for floats).
pub(crate) fn is_zero<T: Scalar>(v: &T) -> bool {
    v.is_zero()
}
