//! Exact rational arithmetic for densities, curvatures and functional values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational. Serializes as `{"num": int, "den": int}`
/// with the denominator always positive and the fraction fully reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactRatio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        ExactRatio(BigRational::from(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Smallest integer greater than or equal to the value. An exact integer
    /// stays itself.
    pub fn ceil_int(&self) -> i64 {
        self.0
            .ceil()
            .to_integer()
            .to_i64()
            .expect("ceiling fits in i64")
    }

    pub fn numer_i64(&self) -> Option<i64> {
        self.0.numer().to_i64()
    }

    pub fn denom_i64(&self) -> Option<i64> {
        self.0.denom().to_i64()
    }

    pub fn cmp_int(&self, n: i64) -> Ordering {
        self.0.cmp(&BigRational::from(BigInt::from(n)))
    }

    pub fn abs(&self) -> Self {
        ExactRatio(self.0.abs())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRatio {
    fn from(r: BigRational) -> Self {
        ExactRatio(r)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRatio> for &'a ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &'a ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

impl AddAssign for ExactRatio {
    fn add_assign(&mut self, rhs: ExactRatio) {
        self.0 += rhs.0;
    }
}

#[derive(Serialize, Deserialize)]
struct RatioRepr {
    num: i64,
    den: i64,
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let num = self.0.numer().to_i64().ok_or_else(|| {
            serde::ser::Error::custom("rational numerator does not fit in i64")
        })?;
        let den = self.0.denom().to_i64().ok_or_else(|| {
            serde::ser::Error::custom("rational denominator does not fit in i64")
        })?;
        RatioRepr { num, den }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactRatio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RatioRepr::deserialize(deserializer)?;
        if repr.den == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(ExactRatio::new(repr.num, repr.den))
    }
}

/// Exact ceiling of the fraction `num/den` for a positive denominator.
pub fn ceil_div(num: i64, den: i64) -> i64 {
    assert!(den > 0);
    Integer::div_ceil(&num, &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_orders() {
        assert_eq!(ExactRatio::new(24, 10), ExactRatio::new(12, 5));
        assert!(ExactRatio::new(12, 5) < ExactRatio::new(5, 2));
        assert_eq!(ExactRatio::new(-3, -1), ExactRatio::from_int(3));
    }

    #[test]
    fn ceiling_keeps_exact_integers() {
        assert_eq!(ExactRatio::new(3, 1).ceil_int(), 3);
        assert_eq!(ExactRatio::new(16, 5).ceil_int(), 4);
        assert_eq!(ExactRatio::new(875, 124).ceil_int(), 8);
        assert_eq!(ceil_div(875, 124), 8);
        assert_eq!(ceil_div(90, 30), 3);
    }

    #[test]
    fn display_matches_reduced_form() {
        assert_eq!(ExactRatio::new(12, 5).to_string(), "12/5");
        assert_eq!(ExactRatio::new(90, 30).to_string(), "3");
    }

    #[test]
    fn json_roundtrip() {
        let r = ExactRatio::new(16, 5);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":16,"den":5}"#);
        let back: ExactRatio = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
