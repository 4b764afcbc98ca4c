//! Serde adapters that carry big integers as decimal strings.
//!
//! Every integer that crosses a document boundary is encoded as a decimal
//! string so that values beyond 64 bits survive JSON round trips bit-exactly.

use crate::Int;
use serde::{de, Deserialize, Deserializer, Serializer};
use std::str::FromStr;

pub fn parse_int(s: &str) -> Result<Int, String> {
    Int::from_str(s.trim()).map_err(|e| format!("bad integer {s:?}: {e}"))
}

pub mod int_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Int, D::Error> {
        let s = String::deserialize(de)?;
        parse_int(&s).map_err(de::Error::custom)
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|i| i.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Int>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.iter()
            .map(|s| parse_int(s).map_err(de::Error::custom))
            .collect()
    }
}

pub mod int_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Int>, ser: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(i) => ser.serialize_some(&i.to_string()),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Int>, D::Error> {
        let raw = Option::<String>::deserialize(de)?;
        raw.map(|s| parse_int(&s).map_err(de::Error::custom))
            .transpose()
    }
}
