use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::log_real::{ln_rational, Real};
use super::{Prime, Rational};

/// Beyond this many bits the exact sign test falls back to a 512-bit evaluation.
const MAX_EXACT_BITS: u64 = 1 << 22;

/// `Σ_i e_i · log b_i` with positive rational bases `b_i` and rational exponents `e_i`.
///
/// Every finite-place quantity in this crate, and every archimedean quantity built
/// from rational data, is of this form. The sign of such a sum is decided exactly
/// by comparing two integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactLog {
    terms: BTreeMap<Rational, Rational>,
}

impl ExactLog {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `log q` for `q > 0`.
    pub fn of(q: &Rational) -> Self {
        assert!(q.is_positive(), "log of a non-positive rational");
        Self::from_term(q.clone(), Rational::one())
    }

    pub fn of_int(n: u64) -> Self {
        Self::of(&Rational::from_integer(n.into()))
    }

    /// `e · log p`.
    pub fn prime_power(p: &Prime, e: &Rational) -> Self {
        let base = Rational::from_integer(BigInt::from(p.as_biguint().clone()));
        Self::from_term(base, e.clone())
    }

    pub fn from_term(base: Rational, exp: Rational) -> Self {
        let mut out = Self::zero();
        out.push(base, exp);
        out
    }

    fn push(&mut self, base: Rational, exp: Rational) {
        if base.is_one() || exp.is_zero() {
            return;
        }
        let entry = self.terms.entry(base).or_insert_with(Rational::zero);
        *entry += exp;
        if entry.is_zero() {
            self.terms.retain(|_, e| !e.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, e) in &other.terms {
            out.push(b.clone(), e.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExactLog {
            terms: self.terms.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ExactLog {
            terms: self.terms.iter().map(|(b, e)| (b.clone(), e * r)).collect(),
        }
    }

    /// Exact sign of the represented real number.
    pub fn signum(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let mut bits: u64 = 0;
        let mut powers = Vec::with_capacity(self.terms.len());
        for (b, e) in &self.terms {
            let k = (e * Rational::from_integer(lcm.clone())).to_integer();
            let k_abs = k.abs().to_u64().unwrap_or(u64::MAX);
            let size = b.numer().bits() + b.denom().bits();
            bits = bits.saturating_add(k_abs.saturating_mul(size));
            powers.push((b, k.is_positive(), k_abs));
        }
        if bits > MAX_EXACT_BITS {
            let (v, tol) = self.evaluate(512);
            let v = v.to_f64().value();
            if v.abs() <= tol {
                return Ordering::Equal;
            }
            return v.partial_cmp(&0.0).unwrap_or(Ordering::Equal);
        }
        let mut lhs = BigUint::one();
        let mut rhs = BigUint::one();
        for (b, positive, k) in powers {
            let n = b.numer().magnitude();
            let d = b.denom().magnitude();
            let k = k as u32;
            if positive {
                lhs *= n.pow(k);
                rhs *= d.pow(k);
            } else {
                lhs *= d.pow(k);
                rhs *= n.pow(k);
            }
        }
        lhs.cmp(&rhs)
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Numerical value at `prec` bits together with an absolute error bound.
    pub fn evaluate(&self, prec: usize) -> (Real, f64) {
        let work = prec + 16;
        let mut acc = Real::ZERO.with_precision(work).value();
        let mut tol = 0.0f64;
        for (b, e) in &self.terms {
            let l = ln_rational(b, work);
            let lf = l.to_f64().value().abs();
            let ef = e.to_f64().unwrap_or(f64::MAX).abs();
            let er = super::real_from_rational(e, work);
            acc = &acc + &(&l * &er);
            tol += ef * (lf + 1.0) * 2f64.powi(-(prec as i32));
        }
        (acc, tol)
    }
}

impl fmt::Display for ExactLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, e)) in self.terms.iter().enumerate() {
            let neg = e.is_negative();
            let mag = e.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{}*", mag)?;
                } else {
                    write!(f, "({})*", mag)?;
                }
            }
            write!(f, "log({})", b)?;
        }
        Ok(())
    }
}
