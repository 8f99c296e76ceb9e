//! The integer backends the arithmetic is generic over.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigUint;

/// Unsigned integers with exact arithmetic. Fixed-width backends panic on
/// overflow rather than wrap.
pub trait ExactInt:
    Clone
    + Ord
    + Debug
    + Display
    + From<u64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Number of significant bits; 0 for 0.
    fn bit_len(&self) -> u64;

    fn is_power_of_two(&self) -> bool;

    fn to_decimal(&self) -> String {
        self.to_string()
    }
}

impl ExactInt for BigUint {
    fn bit_len(&self) -> u64 {
        self.bits()
    }

    fn is_power_of_two(&self) -> bool {
        self.bits() > 0 && self.trailing_zeros() == Some(self.bits() - 1)
    }
}

impl ExactInt for u128 {
    fn bit_len(&self) -> u64 {
        u64::from(u128::BITS - self.leading_zeros())
    }

    fn is_power_of_two(&self) -> bool {
        u128::is_power_of_two(*self)
    }
}

/// `floor(log2 x)` for `x > 0`.
pub fn floor_log2<I: ExactInt>(x: &I) -> u64 {
    let b = x.bit_len();
    assert!(b > 0, "log of zero");
    b - 1
}

/// `ceil(a / b)`.
pub fn div_ceil<I: ExactInt>(a: I, b: I) -> I {
    let one = I::from(1);
    if a == I::from(0) {
        a
    } else {
        (a - one.clone()) / b + one
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backends_agree_on_bits() {
        for x in [1u64, 2, 3, 4, 63, 64, 65, 1 << 40] {
            assert_eq!(BigUint::from(x).bit_len(), u128::from(x).bit_len());
            assert_eq!(
                ExactInt::is_power_of_two(&BigUint::from(x)),
                ExactInt::is_power_of_two(&u128::from(x))
            );
        }
        assert_eq!(floor_log2(&64u128), 6);
        assert_eq!(floor_log2(&BigUint::from(65u32)), 6);
        assert_eq!(div_ceil(7u128, 2), 4);
        assert_eq!(div_ceil(0u128, 2), 0);
    }
}
