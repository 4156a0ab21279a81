//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};
use rustfft::FftNum;

/// Real floating-point scalar usable by the transforms and statistics.
///
/// Implemented for `f32` and `f64`. The tolerance hooks scale the numerical
/// health checks (norm, imaginary residue) to the precision of the type.
pub trait Real:
    Float
    + FloatConst
    + FftNum
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Default
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Allowed deviation of a state norm from 1.
    fn norm_tolerance() -> Self;

    /// Largest imaginary residue accepted before a Wigner value is taken as real.
    fn residue_tolerance() -> Self;

    /// Wigner values with magnitude at or below this are treated as zero.
    fn zero_floor() -> Self;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn of_usize(x: usize) -> Self {
        Self::from_usize(x).expect("usize representable")
    }

    #[inline]
    fn of_i64(x: i64) -> Self {
        Self::from_i64(x).expect("i64 representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    fn norm_tolerance() -> Self {
        1e-12
    }
    fn residue_tolerance() -> Self {
        1e-10
    }
    fn zero_floor() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn norm_tolerance() -> Self {
        1e-5
    }
    fn residue_tolerance() -> Self {
        1e-3
    }
    fn zero_floor() -> Self {
        1e-3
    }
}
