use num_traits::{Signed, Zero};

use super::uni::primitive_integer_coeffs;
use super::{BiPoly, UniPoly};
use crate::arith::{abs_at_place, ExactLog, LogReal, Place, Rational};
use crate::{Error, Result};

/// Projective height of a coefficient vector over Q: `log max |c_i|` of its coprime integer form.
pub fn height_coeffs<'a, I: IntoIterator<Item = &'a Rational>>(coeffs: I) -> Result<LogReal> {
    let cs: Vec<Rational> = coeffs.into_iter().filter(|c| !c.is_zero()).cloned().collect();
    if cs.is_empty() {
        return Err(Error::Domain("height of the zero polynomial".into()));
    }
    let max = primitive_integer_coeffs(&cs)
        .into_iter()
        .map(|c| c.abs())
        .max()
        .expect("non-empty");
    Ok(LogReal::Exact(ExactLog::of(&Rational::from_integer(max))))
}

pub fn height_poly(p: &BiPoly) -> Result<LogReal> {
    height_coeffs(p.coefficients())
}

pub fn height_uni(p: &UniPoly) -> Result<LogReal> {
    height_coeffs(p.coeffs())
}

/// `log |P|_v`, the logarithm of the largest coefficient norm at `v`.
pub fn norm_at_place<'a, I: IntoIterator<Item = &'a Rational>>(coeffs: I, v: &Place) -> LogReal {
    coeffs
        .into_iter()
        .map(|c| abs_at_place(c, v))
        .fold(LogReal::NegInfinity, |acc, x| acc.max(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Prime;
    use crate::poly::parse_bipoly;

    fn h(s: &str) -> LogReal {
        height_poly(&parse_bipoly(s).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert!(h("w^2 - z - 1").exact_eq(&LogReal::zero()));
        assert!(h("2w - 3z").exact_eq(&LogReal::log_of_int(3)));
        assert!(h("w/2 - 1/3").exact_eq(&LogReal::log_of_int(3)));
        assert!(height_poly(&BiPoly::zero()).is_err());
    }

    #[test]
    fn place_by_place_oracle() {
        // Σ_v log |P|_v over ∞ and the primes dividing numerators or denominators.
        for s in ["w/2 - 1/3", "6w^2 - 10z/7 + 15", "4/9 z w - 8/27"] {
            let p = parse_bipoly(s).unwrap();
            let mut sum = norm_at_place(p.coefficients(), &Place::Infinite);
            for q in [2u64, 3, 5, 7] {
                let v = Place::Finite(Prime::from_u64(q).unwrap());
                sum = sum.add(&norm_at_place(p.coefficients(), &v));
            }
            assert!(sum.exact_eq(&height_poly(&p).unwrap()), "{}", s);
        }
    }
}
