//! Coefficient rings for symmetric-function arithmetic.
//!
//! Everything in [`crate::symcore`] and [`crate::formulas`] is generic over a
//! [`Scalar`]. The exact types ([`BigRational`], [`BigInt`]) are the ones the
//! verification code uses; `f64`/`f32` are provided for quick numerical
//! exploration and never appear in an equality check.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative coefficient ring with a sign, embeddable from the integers.
///
/// Division is only ever applied to values that are exact multiples of the
/// divisor (factorial normalisations), so integer rings are admissible.
pub trait Scalar:
    Clone + Debug + Display + FromStr + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// True when the value is an integer (always true for integer rings).
    fn is_integral(&self) -> bool;

    /// Exact form, when the ring is exact. Floating point returns `None`.
    fn to_rational(&self) -> Option<BigRational>;
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

impl Scalar for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }

    fn is_integral(&self) -> bool {
        true
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(self.clone()))
    }
}

macro_rules! float_scalar {
    ($t:ty, $conv:ident) => {
        impl Scalar for $t {
            fn from_bigint(n: &BigInt) -> Self {
                n.$conv().unwrap_or(<$t>::NAN)
            }

            fn is_integral(&self) -> bool {
                self.fract() == 0.0
            }

            fn to_rational(&self) -> Option<BigRational> {
                None
            }
        }
    };
}

float_scalar!(f64, to_f64);
float_scalar!(f32, to_f32);

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `binomial(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(1), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(30, 15), BigInt::from(155117520u64));
    }

    #[test]
    fn integrality() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(!half.is_integral());
        assert!(BigRational::from_int(-4).is_integral());
        assert!(!2.5f64.is_integral());
        assert!(<f32 as Scalar>::from_int(7).is_integral());
    }
}
