//! Floating point scalar abstraction.
//!
//! All geometry and layout code is generic over [`Scalar`], which is
//! implemented for `f32` and `f64`. `f64` is what the command line uses.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use geo::{BooleanOps, MultiPolygon};
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Gathers the traits the diagram engine needs from a floating point type.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    const TWO: Self;
    const HALF: Self;

    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self;

    /// Lossy conversion from an element count.
    fn from_count(n: usize) -> Self;

    #[doc(hidden)]
    fn clip_intersection(a: &MultiPolygon<Self>, b: &MultiPolygon<Self>) -> MultiPolygon<Self>;

    #[doc(hidden)]
    fn clip_difference(a: &MultiPolygon<Self>, b: &MultiPolygon<Self>) -> MultiPolygon<Self>;
}

macro_rules! impl_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            const TWO: Self = 2.0;
            const HALF: Self = 0.5;

            #[inline]
            fn lit(v: f64) -> Self {
                v as $f
            }

            #[inline]
            fn from_count(n: usize) -> Self {
                n as $f
            }

            fn clip_intersection(a: &MultiPolygon<Self>, b: &MultiPolygon<Self>) -> MultiPolygon<Self> {
                a.intersection(b)
            }

            fn clip_difference(a: &MultiPolygon<Self>, b: &MultiPolygon<Self>) -> MultiPolygon<Self> {
                a.difference(b)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);
