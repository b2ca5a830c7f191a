//! Exact scalar types.
//!
//! Every complex in this crate is defined over a field of characteristic
//! zero. The [`Scalar`] trait captures what the linear algebra needs from a
//! coefficient type: exact field arithmetic plus a lossless round trip to a
//! `numerator/denominator` pair of big integers, which is how rank
//! computations move into fraction-free integer elimination and how matrices
//! are serialized.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact field element.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Canonical `(numerator, denominator)` with `denominator > 0` and
    /// `gcd(numerator, denominator) = 1`.
    fn to_num_den(&self) -> (BigInt, BigInt);

    /// Inverse of [`Scalar::to_num_den`]. Returns `None` when the value does
    /// not fit the backing integer type or the denominator is zero.
    fn from_num_den(num: BigInt, den: BigInt) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar type cannot represent a machine integer")
    }

    fn from_count(n: u64) -> Self {
        <Self as FromPrimitive>::from_u64(n).expect("scalar type cannot represent a machine integer")
    }
}

impl Scalar for BigRational {
    fn to_num_den(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }

    fn from_num_den(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num, den))
        }
    }
}

macro_rules! machine_ratio_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn to_num_den(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_num_den(num: BigInt, den: BigInt) -> Option<Self> {
                if den.is_zero() {
                    return None;
                }
                let g = num.gcd(&den);
                let (mut n, mut d) = (num / &g, den / &g);
                if d.is_negative() {
                    n = -n;
                    d = -d;
                }
                Some(Ratio::new_raw(n.to_i128()?.try_into().ok()?, d.to_i128()?.try_into().ok()?))
            }
        }
    };
}

machine_ratio_scalar!(i64);
machine_ratio_scalar!(i128);

/// Formats a scalar as `num/den`, always with an explicit denominator.
pub fn format_ratio<T: Scalar>(x: &T) -> String {
    let (n, d) = x.to_num_den();
    format!("{n}/{d}")
}

/// Parses `num/den` or a bare integer.
pub fn parse_ratio<T: Scalar>(s: &str) -> Result<T, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    T::from_num_den(n, d).ok_or_else(bad)
}

/// `(-1)^e` as a scalar.
pub fn sign<T: Scalar>(negative: bool) -> T {
    if negative {
        -T::one()
    } else {
        T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_string_round_trip() {
        let x: BigRational = parse_ratio("-6/4").unwrap();
        assert_eq!(format_ratio(&x), "-3/2");
        let y: Ratio<i64> = parse_ratio("7").unwrap();
        assert_eq!(format_ratio(&y), "7/1");
        assert!(parse_ratio::<BigRational>("1/0").is_err());
        assert!(parse_ratio::<BigRational>("x").is_err());
    }

    #[test]
    fn machine_ratio_rejects_overflow() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        assert!(<Ratio<i64> as Scalar>::from_num_den(big.clone(), BigInt::from(1)).is_none());
        assert!(<Ratio<i128> as Scalar>::from_num_den(big, BigInt::from(-8)).is_some());
    }

    #[test]
    fn canonical_form_has_positive_denominator() {
        let x = <Ratio<i64> as Scalar>::from_num_den(BigInt::from(3), BigInt::from(-6)).unwrap();
        assert_eq!(x.to_num_den(), (BigInt::from(-1), BigInt::from(2)));
    }
}
