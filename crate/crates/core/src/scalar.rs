use nalgebra::RealField;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar underlying all matrix arithmetic: `f32` or `f64`.
///
/// Combines the num-traits float interface with nalgebra's `RealField` so the
/// same code drives both precisions. `Complex<T>` then implements nalgebra's
/// `ComplexField` automatically.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + RealField
    + Copy
    + std::fmt::Display
    + std::fmt::LowerExp
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Convert an `f64` literal into the working scalar type.
pub fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal out of range for scalar type")
}
