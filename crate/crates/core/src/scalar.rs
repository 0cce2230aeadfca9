//! Scalar abstractions.
//!
//! The group law, polynomial algebra and the polynomial gap-filler formulas
//! only need field operations, so they are generic over [`Scalar`] and can be
//! run with exact rationals. Anything that needs square roots, trigonometry
//! or quadrature is generic over [`Real`] (`f32` or `f64`).

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// A field element: `f32`, `f64`, or an exact rational such as `BigRational`.
pub trait Scalar: Clone + PartialOrd + Debug + Num + Neg<Output = Self> + FromPrimitive {
    /// Integer constant as a scalar.
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer constant must be representable")
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl<T> Scalar for T where T: Clone + PartialOrd + Debug + Num + Neg<Output = T> + FromPrimitive {}

/// Floating-point scalar used by the analytic parts of the crate.
pub trait Real: Scalar + Float + FloatConst + Copy + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal must convert")
    }

    fn to_f64_lossy(self) -> f64 {
        <f64 as num_traits::NumCast>::from(self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
