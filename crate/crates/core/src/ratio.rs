//! Exact rationals for ratio series, serialized as `{"num": .., "den": ..}`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self(Ratio::new(num, den)))
    }

    /// `num / den` for unsigned inputs such as two pebbling numbers.
    pub fn of(num: u64, den: u64) -> Result<Self> {
        let num = i64::try_from(num).map_err(|_| Error::Overflow("rational numerator"))?;
        let den = i64::try_from(den).map_err(|_| Error::Overflow("rational denominator"))?;
        Self::new(num, den)
    }

    pub fn integer(v: i64) -> Self {
        Self(Ratio::from_integer(v))
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    /// `|self - other|`.
    pub fn distance(&self, other: &Rational) -> Rational {
        let diff = self.0 - other.0;
        Self(if diff < Ratio::from_integer(0) {
            -diff
        } else {
            diff
        })
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den() == 1 {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: i64,
    den: i64,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            num: self.num(),
            den: self.den(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        Rational::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_serializes() {
        let r = Rational::of(6, 4).unwrap();
        assert_eq!((r.num(), r.den()), (3, 2));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":3,"den":2}"#);
        let back: Rational = serde_json::from_str(r#"{"num":6,"den":4}"#).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":0}"#).is_err());
    }

    #[test]
    fn distance_is_symmetric() {
        let a = Rational::of(4, 3).unwrap();
        let b = Rational::integer(1);
        assert_eq!(a.distance(&b), Rational::of(1, 3).unwrap());
        assert_eq!(b.distance(&a), a.distance(&b));
        assert_eq!(a.to_string(), "4/3");
        assert_eq!(Rational::integer(2).to_string(), "2");
    }
}
