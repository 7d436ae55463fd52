//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Default relative tolerance used by [`Tolerance::default`](crate::geom::Tolerance).
    const DEFAULT_REL_EPS: f64;
    /// Default absolute tolerance.
    const DEFAULT_ABS_EPS: f64;

    /// Converts an `f64` literal. Panics only for values the type cannot hold,
    /// which never happens for the constants used in this crate.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f64 {
    const DEFAULT_REL_EPS: f64 = 1e-9;
    const DEFAULT_ABS_EPS: f64 = 1e-12;
}

impl Real for f32 {
    const DEFAULT_REL_EPS: f64 = 1e-4;
    const DEFAULT_ABS_EPS: f64 = 1e-6;
}
