//! Count scalars.
//!
//! Census code is generic over the integer type holding counts. Fixed-width
//! types report overflow instead of wrapping; [`num_bigint::BigUint`] and
//! [`num_bigint::BigInt`] never overflow.

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

/// An exact nonnegative-capable integer with checked arithmetic.
pub trait CountScalar:
    Clone + Ord + Debug + Display + Zero + One + CheckedAdd + CheckedSub + CheckedMul + Send + Sync
{
}

impl<T> CountScalar for T where
    T: Clone + Ord + Debug + Display + Zero + One + CheckedAdd + CheckedSub + CheckedMul + Send + Sync
{
}

/// A [`CountScalar`] that can hold negative intermediate terms.
pub trait SignedScalar: CountScalar + Signed {}

impl<T: CountScalar + Signed> SignedScalar for T {}

/// `2^exp`, or `None` on overflow.
pub fn checked_pow2<T: CountScalar>(exp: usize) -> Option<T> {
    let two = T::one().checked_add(&T::one())?;
    num_traits::checked_pow(two, exp)
}
