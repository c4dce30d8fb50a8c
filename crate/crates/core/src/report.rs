//! Serialization helpers shared by the report types.

use num_bigint::{BigInt, BigUint};
use serde::Serializer;

pub(crate) fn bigint_decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

pub(crate) fn biguint_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}
