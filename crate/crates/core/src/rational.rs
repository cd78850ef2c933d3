//! Arbitrary-precision rationals and their JSON encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_unit(x: &Q) -> bool {
    x.is_integer() && x.abs().is_one()
}

/// Rational encoded as decimal strings, `{"num": "-3", "den": "2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Q> for RationalJson {
    fn from(x: &Q) -> Self {
        RationalJson { num: x.numer().to_string(), den: x.denom().to_string() }
    }
}

impl TryFrom<&RationalJson> for Q {
    type Error = num_bigint::ParseBigIntError;

    fn try_from(r: &RationalJson) -> Result<Self, Self::Error> {
        let num: BigInt = r.num.parse()?;
        let den: BigInt = r.den.parse()?;
        Ok(Q::new(num, den))
    }
}

/// Serializes a rational through [`RationalJson`].
pub fn serialize_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    RationalJson::from(x).serialize(s)
}

/// `a`, or `a/b` when not integral.
pub fn display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let x = q_frac(-6, 4);
        let j = RationalJson::from(&x);
        assert_eq!(j.num, "-3");
        assert_eq!(j.den, "2");
        assert_eq!(Q::try_from(&j).unwrap(), x);
    }

    #[test]
    fn helpers() {
        assert_eq!(to_i64(&q(7)), Some(7));
        assert_eq!(to_i64(&q_frac(1, 2)), None);
        assert!(is_unit(&q(-1)));
        assert!(!is_unit(&q(2)));
        assert_eq!(display(&q_frac(3, 6)), "1/2");
    }
}
