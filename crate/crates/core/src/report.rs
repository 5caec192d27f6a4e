//! Serialization helpers shared by the certificate and report types.

use serde::Serializer;

use crate::arith::Rational;

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}
