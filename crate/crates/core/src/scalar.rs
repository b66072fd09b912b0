//! Scalar traits the linear algebra and polynomial code is generic over.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// A commutative ring with exact equality: integers, rationals, floats.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = Self> {}

/// A field. Elimination routines pivot on the first entry that is not zero,
/// so rank decisions are only trustworthy when `EXACT` is true.
pub trait Field: Scalar + FromPrimitive {
    const EXACT: bool;

    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("integer is representable")
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Debug + Integer + Signed,
    Ratio<T>: FromPrimitive,
{
    const EXACT: bool = true;
}

impl Field for f64 {
    const EXACT: bool = false;
}

impl Field for f32 {
    const EXACT: bool = false;
}
