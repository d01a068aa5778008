//! Scalar abstraction shared by the exact and floating-point code paths.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Field element the chain algebra and the coupling recursion run over.
///
/// Only field operations and ordering are required, so the recursion is
/// exact over [`BigRational`] and approximate over `f32`/`f64`.
pub trait Scalar: Num + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync {
    fn to_f64(&self) -> f64;

    fn from_i64(value: i64) -> Self;

    /// Whether arithmetic on this type rounds.
    fn is_exact() -> bool;
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f32 {
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn from_i64(value: i64) -> Self {
        value as f32
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for BigRational {
    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles numerators and denominators far outside f64 range.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn is_exact() -> bool {
        true
    }
}
