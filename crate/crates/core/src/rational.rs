//! Exact rationals and their string encoding.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad(s))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad(s))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in rational {s:?}")));
        }
        Ok(Q::new(n, d))
    } else {
        Ok(Q::from_integer(BigInt::from_str(t).map_err(|_| bad(s))?))
    }
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("not a rational: {s:?}"))
}

pub fn format_q(v: &Q) -> String {
    v.to_string()
}

pub fn to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or_else(|| if v.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY })
}

pub fn is_integer(v: &Q) -> bool {
    v.denom().is_one()
}

/// Serde adapter storing a rational as its string form.
pub mod as_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub mod vec_as_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_q(s).map_err(serde::de::Error::custom)).collect()
    }
}
