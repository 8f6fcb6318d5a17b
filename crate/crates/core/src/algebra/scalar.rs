use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// Commutative ring with unit: the coefficient domain of the polynomial types.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// A [`Ring`] with exact division by nonzero elements.
pub trait Field: Ring + Div<Output = Self> {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// `base^exp` for a possibly negative exponent; `None` when a negative power
/// of zero is requested.
pub fn signed_pow<F: Field>(base: &F, exp: i64) -> Option<F> {
    let magnitude = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Some(magnitude)
    } else {
        magnitude.inverse()
    }
}

/// Conversion of a small integer into the scalar type.
pub fn from_i64<R: Ring>(value: i64) -> R {
    R::from_i64(value).expect("every ring in this crate embeds the integers")
}
