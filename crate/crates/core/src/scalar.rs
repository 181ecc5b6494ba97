//! Scalar abstractions.
//!
//! Bell-polynomial coefficients, local bounds and polytope data live in an
//! exact field ([`ExactScalar`]); quantum states and correlators live in a
//! floating-point type ([`Real`]).

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Exact ordered field used for polynomial coefficients.
///
/// Implemented for [`BigRational`] (the default, never overflows) and for
/// `Ratio<i64>` / `Ratio<i128>`, which are faster but panic on overflow for
/// large party counts.
pub trait ExactScalar:
    Clone + Ord + Hash + Signed + Debug + Display + FromStr + Send + Sync + 'static
{
    fn from_integer(v: i128) -> Self;

    fn to_f64(&self) -> f64;

    fn to_big_rational(&self) -> BigRational;

    fn from_big_rational(v: &BigRational) -> Option<Self>;

    fn is_integer(&self) -> bool;
}

impl ExactScalar for BigRational {
    fn from_integer(v: i128) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self.numer(), self.denom())
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_big_rational(v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }
}

macro_rules! impl_exact_for_ratio {
    ($int:ty) => {
        impl ExactScalar for Ratio<$int> {
            fn from_integer(v: i128) -> Self {
                let v = <$int>::try_from(v).expect("integer does not fit the rational scalar type");
                Ratio::from_integer(v)
            }

            fn to_f64(&self) -> f64 {
                self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
            }

            fn to_big_rational(&self) -> BigRational {
                Ratio::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_big_rational(v: &BigRational) -> Option<Self> {
                let n = v.numer().to_i128()?;
                let d = v.denom().to_i128()?;
                Some(Ratio::new(<$int>::try_from(n).ok()?, <$int>::try_from(d).ok()?))
            }

            fn is_integer(&self) -> bool {
                Ratio::is_integer(self)
            }
        }
    };
}

impl_exact_for_ratio!(i64);
impl_exact_for_ratio!(i128);

fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // Shift both down so they fit a double, then divide.
            let shift = n.bits().max(d.bits()).saturating_sub(1000);
            let a = (n >> shift).to_f64().unwrap_or(f64::NAN);
            let b = (d >> shift).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

/// Floating-point scalar for states, operators and correlators.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for normalization and Hermiticity checks.
    fn validation_tol() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }
}

impl Real for f64 {
    fn validation_tol() -> f64 {
        1e-12
    }
}

impl Real for f32 {
    fn validation_tol() -> f32 {
        1e-5
    }
}

/// Binomial coefficient as an exact integer (0 when `k > n`).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub(crate) fn binomial_real<R: Real>(n: usize, k: usize) -> R {
    R::from_u128(binomial(n, k)).unwrap_or_else(R::infinity)
}

pub(crate) fn exact_pow2<T: ExactScalar>(exp: u32) -> T {
    let mut acc = T::one();
    let two = T::one() + T::one();
    for _ in 0..exp {
        acc = acc * two.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 20), 137_846_528_820);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn rational_conversions() {
        let r: BigRational = "7/4".parse().unwrap();
        assert_eq!(ExactScalar::to_f64(&r), 1.75);
        let small = Ratio::<i64>::from_big_rational(&r).unwrap();
        assert_eq!(small, Ratio::new(7, 4));
        assert_eq!(small.to_big_rational(), r);
        assert!(!ExactScalar::is_integer(&r));
        assert_eq!(ExactScalar::to_f64(&<BigRational as ExactScalar>::from_integer(-3)), -3.0);
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = BigInt::from(3u8).pow(2000);
        let r = Ratio::new(big.clone() * 2, big);
        assert!((ExactScalar::to_f64(&r) - 2.0).abs() < 1e-12);
    }
}
