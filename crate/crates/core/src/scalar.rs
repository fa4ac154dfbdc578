//! Floating-point scalar abstraction.
//!
//! All simulation and estimation code is generic over [`Scalar`] so the same
//! kernels run in single or double precision. Double precision is the default
//! throughout; the `f32` instantiation exists for memory-constrained
//! experiments and accepts correspondingly looser tolerances.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Scalar type of the amplitudes: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + NumAssign + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short name recorded in result metadata.
    const NAME: &'static str;
}

impl Scalar for f32 {
    const NAME: &'static str = "f32";
}

impl Scalar for f64 {
    const NAME: &'static str = "f64";
}

/// Lossless-enough conversion from `f64` used for constants and tolerances.
#[inline]
pub(crate) fn from_f64<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("f64 constant must convert to scalar")
}

/// Exact conversion of small unsigned integers (counts, register sizes).
#[inline]
pub(crate) fn from_u64<S: Scalar>(x: u64) -> S {
    S::from_u64(x).expect("u64 value must convert to scalar")
}
