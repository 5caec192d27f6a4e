use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::primes::is_prime;
use crate::{Error, Result};

/// A rational prime. Construction checks primality (deterministic below 2^64).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(p: BigUint) -> Result<Self> {
        if is_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(Error::Domain(format!("{p} is not prime")))
        }
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    /// Caller guarantees primality (values produced by the sieve or the factorizer).
    pub(crate) fn new_unchecked(p: BigUint) -> Self {
        debug_assert!(is_prime(&p));
        Prime(p)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A place of Q: the archimedean absolute value or a p-adic one.
///
/// Ordered with the infinite place first, then primes ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(Prime),
}

impl Place {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    pub fn prime(&self) -> Option<&Prime> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinite => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
