//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the library is generic over (`f32` or `f64`).
///
/// Coefficient tables are stored as `f64` and narrowed through [`Real::cst`];
/// accuracy targets quoted in the documentation refer to `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// `-ln` of the smallest positive subnormal, the point past which `exp(-x)` is zero.
    const UNDERFLOW_LOG: f64;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn cst(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in the scalar type")
    }

    /// Converts a count into `Self`.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in the scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn half() -> Self {
        Self::cst(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::cst(2.0)
    }
}

impl Real for f64 {
    const UNDERFLOW_LOG: f64 = 745.0;
}

impl Real for f32 {
    const UNDERFLOW_LOG: f64 = 103.0;
}
