//! Scalar abstraction: every quantity in this crate is generic over a
//! floating-point type implementing [`Real`].

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar: f32 or f64.
///
/// Functions that need an eigenvalue or linear-algebra backend additionally
/// require [`nalgebra::RealField`]; both standard float types satisfy the
/// combined bounds.
pub trait Real: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Convert an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal not representable in scalar type")
    }

    /// Convert a small integer into the scalar type.
    #[inline]
    fn of(v: i32) -> Self {
        Self::from_i32(v).expect("integer not representable in scalar type")
    }
}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {}

/// Real m-th root: the signed root for odd m; even m requires `v >= 0`.
pub(crate) fn real_root<T: Real>(v: T, m: u32) -> Option<T> {
    let inv = T::one() / T::from_u32(m).unwrap();
    if m % 2 == 1 {
        Some(v.signum() * v.abs().powf(inv))
    } else if v >= T::zero() {
        Some(v.powf(inv))
    } else {
        None
    }
}
