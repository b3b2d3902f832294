//! Scalar abstractions shared by the counting engines and polynomials.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

/// A commutative semiring element that can accumulate homomorphism counts.
///
/// Implemented for every type with the usual arithmetic, so the dynamic
/// program runs unchanged over `u64`, `u128`, [`crate::BigCount`] or a
/// rational type. Exactness is the caller's responsibility: fixed-width
/// types are only used where the total is known to fit.
pub trait Count: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> + Send + Sync {}

impl<T> Count for T where T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Send + Sync {}

/// A commutative ring element, used for polynomial coefficients.
pub trait Ring: Count + Sub<Output = Self> + PartialEq {}

impl<T> Ring for T where T: Count + Sub<Output = T> + PartialEq {}

/// `base^exp` by repeated squaring for any [`Count`].
pub fn pow<T: Count>(base: &T, mut exp: u64) -> T {
    let mut acc = T::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// Lift a machine integer into any [`Count`] by binary expansion.
pub fn from_u64<T: Count>(mut x: u64) -> T {
    let mut acc = T::zero();
    let mut unit = T::one();
    while x > 0 {
        if x & 1 == 1 {
            acc = acc + unit.clone();
        }
        x >>= 1;
        if x > 0 {
            unit = unit.clone() + unit;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn pow_matches_native() {
        assert_eq!(pow(&3u64, 0), 1);
        assert_eq!(pow(&3u64, 5), 243);
        assert_eq!(pow(&BigUint::from(2u32), 100), BigUint::from(1u32) << 100);
    }

    #[test]
    fn from_u64_roundtrip() {
        for x in [0u64, 1, 2, 7, 1000, u64::MAX] {
            assert_eq!(from_u64::<u128>(x), x as u128);
        }
    }
}
