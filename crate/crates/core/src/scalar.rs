//! Floating-point abstraction for the numeric kernel.

use std::fmt;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// IEEE scalar the matrix and Clifford layers are generic over.
///
/// `f64` is the working type everywhere tolerances around 1e-9 matter;
/// `f32` is supported for callers that bring their own tolerances.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + Default + Send + Sync + 'static
{
    /// Conversion from an `f64` literal. Panics only for values outside the
    /// target type's range, which no constant in this crate is.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
