//! The integer scalar abstraction used by the exact linear algebra.
//!
//! Everything in [`crate::linalg`] is generic over an integer type with exact
//! Euclidean division. `BigInt` is the production choice; machine integers
//! are accepted so that small oracles and property tests can run without
//! allocation, but they can overflow on adversarial inputs.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact integer ring element.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn to_bigint(&self) -> BigInt;

    fn from_bigint_checked(b: &BigInt) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint_checked(b: &BigInt) -> Option<Self> {
        i64::try_from(b).ok()
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint_checked(b: &BigInt) -> Option<Self> {
        i128::try_from(b).ok()
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint_checked(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
}

/// Absolute value as a natural number.
pub fn magnitude<T: Scalar>(x: &T) -> BigUint {
    let b = x.to_bigint();
    match b.sign() {
        Sign::Minus => (-b).to_biguint().expect("negated negative is non-negative"),
        _ => b.to_biguint().expect("non-negative"),
    }
}

pub fn scalar_from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("every scalar type holds i64 values")
}
