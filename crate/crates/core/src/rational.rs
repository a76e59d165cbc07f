//! Exact rationals and their string form.
//!
//! Everything numeric in the engine is a [`Q`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator by
//! construction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::Error;

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> Q {
    frac(1, 2)
}

/// True when the value is stored as num/den with gcd 1 and den > 0.
pub fn is_reduced(x: &Q) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}

/// Always prints `a/b`, including integers (`6/1`).
pub fn to_ratio_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Prints integers without a denominator.
pub fn to_short_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        to_ratio_string(x)
    }
}

pub fn parse_rational(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) mod ratio_string_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&to_ratio_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
