use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ExactLog, LogReal, Place, Prime};
use crate::{Error, Result};

/// Exact arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Exponent of `p` in a non-zero integer.
pub fn int_valuation(n: &BigInt, p: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from_biguint(Sign::Plus, p.clone());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q)`, so that `|q|_p = p^{-v_p(q)}`.
pub fn rat_valuation(q: &Rational, p: &Prime) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::Domain("valuation of zero".into()));
    }
    let p = p.as_biguint();
    Ok(int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64)
}

/// `log |q|_v` for the normalized absolute value at `v`. Zero maps to the `−∞` sentinel.
pub fn abs_at_place(q: &Rational, v: &Place) -> LogReal {
    if q.is_zero() {
        return LogReal::NegInfinity;
    }
    match v {
        Place::Infinite => LogReal::Exact(ExactLog::of(&q.abs())),
        Place::Finite(p) => {
            let val = rat_valuation(q, p).expect("non-zero");
            LogReal::Exact(ExactLog::prime_power(p, &Rational::from_integer((-val).into())))
        }
    }
}

pub fn log_plus(x: &LogReal) -> LogReal {
    x.log_plus()
}

/// Outcome of summing `log |q|_v` over a set of places.
#[derive(Clone, Debug)]
pub struct ProductFormula {
    pub holds: bool,
    /// `Σ_v log |q|_v` over the supplied places; exactly zero when `holds`.
    pub residual: LogReal,
}

/// Checks `Σ_v log|q|_v = 0` over `support ∪ {∞}` exactly (symbolically over logs).
pub fn product_formula_check(q: &Rational, support: &[Prime]) -> Result<ProductFormula> {
    if q.is_zero() {
        return Err(Error::Domain("product formula needs a non-zero rational".into()));
    }
    let mut sum = abs_at_place(q, &Place::Infinite);
    for p in support {
        sum = sum.add(&abs_at_place(q, &Place::Finite(p.clone())));
    }
    let holds = match &sum {
        LogReal::Exact(e) => e.is_zero(),
        _ => false,
    };
    Ok(ProductFormula { holds, residual: sum })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn prime(p: u64) -> Prime {
        Prime::from_u64(p).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(rat_valuation(&q(4, 1), &prime(2)).unwrap(), 2);
        assert_eq!(rat_valuation(&q(1, 9), &prime(3)).unwrap(), -2);
        assert_eq!(rat_valuation(&q(7, 1), &prime(5)).unwrap(), 0);
        assert!(rat_valuation(&q(0, 1), &prime(5)).is_err());
    }

    #[test]
    fn absolute_values() {
        let two = abs_at_place(&q(12, 1), &Place::Finite(prime(2)));
        assert!(two.exact_eq(&LogReal::Exact(ExactLog::of(&q(1, 4)))));
        let inf = abs_at_place(&q(-3, 2), &Place::Infinite);
        assert!(inf.exact_eq(&LogReal::Exact(ExactLog::of(&q(3, 2)))));
        let seven = abs_at_place(&q(5, 1), &Place::Finite(prime(7)));
        assert!(seven.exact_eq(&LogReal::zero()));
        assert!(abs_at_place(&q(0, 1), &Place::Infinite).is_neg_infinity());
    }

    #[test]
    fn product_formula_examples() {
        let r = product_formula_check(&q(6, 35), &[prime(2), prime(3), prime(5), prime(7)]).unwrap();
        assert!(r.holds);
        assert!(product_formula_check(&q(1, 1), &[]).unwrap().holds);
        let big = Rational::from_integer(BigInt::from(1u8) << 100);
        let r = product_formula_check(&big, &[prime(2)]).unwrap();
        assert!(r.holds);
        // the direct-summation oracle: 100 log 2 - 100 log 2
        let direct = 100.0 * 2f64.ln() - 100.0 * 2f64.ln();
        assert_eq!(direct, 0.0);
        let incomplete = product_formula_check(&q(6, 35), &[prime(2), prime(3)]).unwrap();
        assert!(!incomplete.holds);
        assert!((incomplete.residual.to_f64() - (1.0f64 / 35.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn log_plus_examples() {
        let l3 = LogReal::Exact(ExactLog::of(&q(3, 1)));
        assert!(log_plus(&l3).exact_eq(&l3));
        assert!(log_plus(&LogReal::Exact(ExactLog::of(&q(1, 4)))).exact_eq(&LogReal::zero()));
        assert!(log_plus(&LogReal::zero()).exact_eq(&LogReal::zero()));
        assert!(log_plus(&LogReal::NegInfinity).exact_eq(&LogReal::zero()));
    }
}
