//! Decimal string serialization for big integers.

use num_bigint::BigInt;
use serde::Serializer;

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn labelled<S: Serializer>(xs: &[(String, BigInt)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(xs.iter().map(|(k, v)| (k, v.to_string())))
}
