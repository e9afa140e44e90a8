use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

use crate::Rational;

/// Field element used for couplings and recurrence coefficients.
///
/// Implemented for `f32`, `f64` and [`Rational`], so the same code path can
/// be checked in exact arithmetic.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: Rational) -> Self;

    fn int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_rational(r: Rational) -> Self {
        *r.numer() as f64 / *r.denom() as f64
    }
}

impl Scalar for f32 {
    fn from_rational(r: Rational) -> Self {
        (*r.numer() as f64 / *r.denom() as f64) as f32
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
}

/// Floating-point scalar for the numerical (transcendental) code paths.
pub trait Real: Scalar + Float + FloatConst + Default {
    fn lit(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("finite literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}
