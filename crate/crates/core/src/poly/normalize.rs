use num_traits::{One, Zero};
use serde::Serialize;

use super::BiPoly;
use crate::arith::Rational;
use crate::{Error, Result};

/// How `P_k(z, w) = s · z^N P(z, z^k w)` was obtained from `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizationRecord {
    pub z_power_stripped: i64,
    pub k: i64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub scaling: Rational,
}

impl NormalizationRecord {
    pub fn identity() -> Self {
        NormalizationRecord { z_power_stripped: 0, k: 0, scaling: Rational::one() }
    }

    /// Recomputes the normalized polynomial from the original one.
    pub fn apply(&self, p: &BiPoly) -> Result<BiPoly> {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in p.terms() {
            let e = i as i64 + self.k * j as i64 + self.z_power_stripped;
            if e < 0 {
                return Err(Error::Domain("record produces a negative z-exponent".into()));
            }
            out.add_term((e as u32, j), c * &self.scaling);
        }
        Ok(out)
    }
}

/// `z^N P(z, z^k w)` with `N` chosen so the result is a polynomial not divisible by `z`,
/// scaled so that `P_k(0, w)` is monic.
pub fn k_normalize(p: &BiPoly, k: i64) -> Result<(BiPoly, NormalizationRecord)> {
    if p.is_zero() {
        return Err(Error::Domain("cannot normalize the zero polynomial".into()));
    }
    let min = p
        .terms()
        .map(|(&(i, j), _)| i as i64 + k * j as i64)
        .min()
        .expect("non-empty");
    let n = -min;
    let unscaled = NormalizationRecord { z_power_stripped: n, k, scaling: Rational::one() };
    let pk = unscaled.apply(p)?;
    let lead = pk.at_z0().lead();
    debug_assert!(!lead.is_zero());
    let record = NormalizationRecord { scaling: lead.recip(), ..unscaled };
    Ok((pk.scale(&record.scaling), record))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_bipoly;

    fn bp(s: &str) -> BiPoly {
        parse_bipoly(s).unwrap()
    }

    #[test]
    fn examples() {
        let (p, r) = k_normalize(&bp("z w^2 - w + 1"), -1).unwrap();
        assert_eq!(p, bp("w^2 - w + z"));
        assert_eq!(r, NormalizationRecord { z_power_stripped: 1, k: -1, scaling: Rational::one() });
        let (p, r) = k_normalize(&bp("w^2 - z - 1"), 0).unwrap();
        assert_eq!(p, bp("w^2 - z - 1"));
        assert_eq!(r, NormalizationRecord::identity());
        let (p, r) = k_normalize(&bp("2w - z"), 0).unwrap();
        assert_eq!(p, bp("w - z/2"));
        assert_eq!(r.scaling, Rational::new(1.into(), 2.into()));
        assert_eq!(r.apply(&bp("2w - z")).unwrap(), p);
    }

    #[test]
    fn strips_powers_of_z() {
        let (p, r) = k_normalize(&bp("z^2 w^2 - 3 z^3"), 0).unwrap();
        assert_eq!(p, bp("w^2 - 3z"));
        assert_eq!(r.z_power_stripped, -2);
        assert_eq!(p.z_order(), 0);
    }
}
