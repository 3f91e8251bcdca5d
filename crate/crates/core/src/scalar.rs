//! Scalar traits the numeric and exact kernels are generic over.
//!
//! Floating kernels (the Jacobi eigensolver) take any [`Real`]; exact kernels
//! (characteristic polynomials, Bareiss rank) take any [`ExactInt`], which
//! covers machine integers with overflow detection as well as `BigInt`.
//! Root isolation works over any ordered [`Field`], in practice `BigRational`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Float, FromPrimitive, Num, Signed, ToPrimitive};

/// f32 or f64.
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Integer ring with checked arithmetic; `checked_*` never fails for `BigInt`.
pub trait ExactInt:
    Clone
    + Debug
    + Num
    + Signed
    + Ord
    + FromPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + Into<BigInt>
{
}

impl ExactInt for i64 {}
impl ExactInt for i128 {}
impl ExactInt for BigInt {}

/// Ordered field used for exact root counting.
pub trait Field: Clone + Debug + Num + Signed + PartialOrd {}

impl Field for BigRational {}
impl Field for f64 {}

pub(crate) fn to_f64_lossy(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
