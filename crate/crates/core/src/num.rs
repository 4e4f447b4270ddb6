//! Exact numbers shared by every module, plus the JSON encoding used for them.
//!
//! Integers go out as JSON numbers while they fit in 64 bits and as decimal
//! strings beyond that. Both forms are accepted on input.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// A reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Option<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return None;
        }
        Some(ExactRational(BigRational::new(numerator.into(), den)))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigInt> for ExactRational {
    fn from(value: BigInt) -> Self {
        ExactRational::integer(value)
    }
}

impl From<i64> for ExactRational {
    fn from(value: i64) -> Self {
        ExactRational::integer(value)
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExactRational", 2)?;
        st.serialize_field("numerator", &JsonInt(self.numerator()))?;
        st.serialize_field("denominator", &JsonInt(self.denominator()))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(with = "bigint")]
            numerator: BigInt,
            #[serde(with = "bigint")]
            denominator: BigInt,
        }
        let raw = Raw::deserialize(deserializer)?;
        if !raw.denominator.is_positive() {
            return Err(de::Error::custom("denominator must be positive"));
        }
        if !raw.numerator.gcd(&raw.denominator).is_one() {
            return Err(de::Error::custom("fraction is not in lowest terms"));
        }
        Ok(ExactRational(BigRational::new_raw(raw.numerator, raw.denominator)))
    }
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

struct BigIntVisitor;

impl<'de> Visitor<'de> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        BigInt::from_str(v.trim()).map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
    }
}

/// `#[serde(with = "bigint")]` for a single [`BigInt`].
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        JsonInt(value).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        deserializer.deserialize_any(BigIntVisitor)
    }
}

/// `#[serde(with = "bigint_vec")]` for a `Vec<BigInt>`.
pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(values.iter().map(JsonInt))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigInt>, D::Error> {
        #[derive(Deserialize)]
        struct Item(#[serde(with = "super::bigint")] BigInt);
        let items = Vec::<Item>::deserialize(deserializer)?;
        Ok(items.into_iter().map(|Item(v)| v).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalises_sign() {
        let r = ExactRational::new(4, -6).unwrap();
        assert_eq!(r.numerator(), &BigInt::from(-2));
        assert_eq!(r.denominator(), &BigInt::from(3));
        assert_eq!(r.to_string(), "-2/3");
        assert!(ExactRational::new(1, 0).is_none());
    }

    #[test]
    fn third_plus_integer() {
        let k2 = ExactRational::integer(0) + ExactRational::new(1, 3).unwrap();
        assert!(!k2.is_integer());
        let k2 = k2 + ExactRational::new(2, 3).unwrap();
        assert_eq!(k2.to_integer(), Some(BigInt::from(1)));
    }

    #[test]
    fn json_switches_to_strings_past_64_bits() {
        let big = BigInt::from(i64::MAX) * 4i32;
        let r = ExactRational::integer(big.clone());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, format!("{{\"numerator\":\"{big}\",\"denominator\":1}}"));
        let back: ExactRational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);

        let small: ExactRational = serde_json::from_str(r#"{"numerator":-1,"denominator":"3"}"#).unwrap();
        assert_eq!(small, ExactRational::new(-1, 3).unwrap());
    }

    #[test]
    fn rejects_unreduced_json() {
        assert!(serde_json::from_str::<ExactRational>(r#"{"numerator":2,"denominator":6}"#).is_err());
        assert!(serde_json::from_str::<ExactRational>(r#"{"numerator":1,"denominator":-3}"#).is_err());
    }
}
