use std::cmp::Ordering;
use std::fmt;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{ExactLog, Rational};

/// Binary floating point number with a per-value mantissa precision.
pub type Real = FBig<HalfEven, 2>;

/// Mantissa bits used for every numerically evaluated logarithm unless the caller asks otherwise.
pub const DEFAULT_PRECISION: usize = 128;

fn ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

pub fn real_from_bigint(n: &BigInt, prec: usize) -> Real {
    Real::from(ibig(n)).with_precision(prec).value()
}

pub fn real_from_rational(q: &Rational, prec: usize) -> Real {
    let num = real_from_bigint(q.numer(), prec + 8);
    let den = real_from_bigint(q.denom(), prec + 8);
    (&num / &den).with_precision(prec).value()
}

pub fn real_from_f64(x: f64, prec: usize) -> Real {
    Real::try_from(x)
        .expect("finite f64")
        .with_precision(prec)
        .value()
}

pub fn real_to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Natural logarithm of a positive integer.
pub fn ln_bigint(n: &BigInt, prec: usize) -> Real {
    assert!(n.is_positive(), "ln of a non-positive integer");
    real_from_bigint(n, prec + 8).ln().with_precision(prec).value()
}

/// Natural logarithm of a positive rational, computed as `ln num − ln den`.
pub fn ln_rational(q: &Rational, prec: usize) -> Real {
    let a = ln_bigint(q.numer(), prec + 8);
    let b = ln_bigint(q.denom(), prec + 8);
    (&a - &b).with_precision(prec).value()
}

/// Scientific notation with `digits` significant decimal digits.
pub fn format_real(x: &Real, digits: usize) -> String {
    if x.repr().significand().is_zero() {
        return "0".into();
    }
    let dec = x.clone().with_base_and_precision::<10>(digits).value();
    let sig = dec.repr().significand().clone();
    let exp = dec.repr().exponent();
    let neg = sig < IBig::ZERO;
    let mut s = if neg { (-sig).to_string() } else { sig.to_string() };
    while s.len() > 1 && s.ends_with('0') {
        s.pop();
    }
    let total = s.len() as isize;
    // value = 0.s × 10^(exp + total)
    let sci = exp + total - 1;
    let mantissa = if s.len() > 1 { format!("{}.{}", &s[..1], &s[1..]) } else { s };
    let body = if (-5..=16).contains(&sci) {
        plain_decimal(&mantissa, sci)
    } else {
        format!("{}e{}", mantissa, sci)
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

fn plain_decimal(mantissa: &str, sci: isize) -> String {
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if sci < 0 {
        format!("0.{}{}", "0".repeat((-sci - 1) as usize), digits)
    } else {
        let int_len = sci as usize + 1;
        if digits.len() <= int_len {
            format!("{}{}", digits, "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    }
}

fn ulp_bound(x: &Real) -> f64 {
    let prec = x.precision().max(53) as i32;
    x.to_f64().value().abs() * 2f64.powi(-(prec - 2)) + f64::MIN_POSITIVE
}

/// A real number on the logarithmic scale.
///
/// Values built purely from rational data stay symbolic ([`ExactLog`]) and compare exactly.
/// Anything involving a numerically computed quantity (root moduli, transcendental
/// constants) becomes `Approx`, where `tol` bounds the absolute error of `value`.
#[derive(Clone, Debug)]
pub enum LogReal {
    /// `log 0`.
    NegInfinity,
    Exact(ExactLog),
    Approx { value: Real, tol: f64 },
}

/// Result of checking `lhs ≤ rhs`.
#[derive(Clone, Debug)]
pub struct Comparison {
    /// For approximate operands this is `lhs ≤ rhs + combined tolerance`.
    pub holds: bool,
    pub exact: bool,
    /// `rhs − lhs`; `None` when `lhs` is `−∞`.
    pub slack: Option<LogReal>,
}

impl LogReal {
    pub fn zero() -> Self {
        LogReal::Exact(ExactLog::zero())
    }

    /// `log q` for a positive rational.
    pub fn log_of(q: &Rational) -> Self {
        if q.is_zero() {
            return LogReal::NegInfinity;
        }
        LogReal::Exact(ExactLog::of(&q.abs()))
    }

    pub fn log_of_int(n: u64) -> Self {
        if n == 0 {
            return LogReal::NegInfinity;
        }
        LogReal::Exact(ExactLog::of_int(n))
    }

    /// The real number `c` itself (not its logarithm), e.g. an additive constant in a bound.
    pub fn constant(c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let value = real_from_rational(c, DEFAULT_PRECISION);
        let tol = ulp_bound(&value);
        LogReal::Approx { value, tol }
    }

    pub fn approx(value: Real, tol: f64) -> Self {
        LogReal::Approx { value, tol }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, LogReal::NegInfinity)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, LogReal::Approx { .. })
    }

    pub fn as_exact(&self) -> Option<&ExactLog> {
        match self {
            LogReal::Exact(e) => Some(e),
            _ => None,
        }
    }

    /// Numerical value and absolute error bound. Panics on `−∞`.
    pub fn value(&self, prec: usize) -> (Real, f64) {
        match self {
            LogReal::NegInfinity => panic!("numerical value of log 0 requested"),
            LogReal::Exact(e) => e.evaluate(prec),
            LogReal::Approx { value, tol } => (value.clone(), *tol),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            LogReal::NegInfinity => f64::NEG_INFINITY,
            _ => self.value(DEFAULT_PRECISION).0.to_f64().value(),
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            LogReal::NegInfinity => 0.0,
            LogReal::Exact(_) => 0.0,
            LogReal::Approx { tol, .. } => *tol,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (LogReal::NegInfinity, _) | (_, LogReal::NegInfinity) => LogReal::NegInfinity,
            (LogReal::Exact(a), LogReal::Exact(b)) => LogReal::Exact(a.add(b)),
            _ => {
                let (a, ta) = self.value(DEFAULT_PRECISION);
                let (b, tb) = other.value(DEFAULT_PRECISION);
                let value = &a + &b;
                let tol = ta + tb + ulp_bound(&value);
                LogReal::Approx { value, tol }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            LogReal::NegInfinity => panic!("negating log 0"),
            LogReal::Exact(e) => LogReal::Exact(e.neg()),
            LogReal::Approx { value, tol } => LogReal::Approx { value: -value.clone(), tol: *tol },
        }
    }

    /// `self − other`; `other` must be finite.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `r · self`, i.e. the logarithm of `X^r`. A zero factor gives `0` even for `log 0`.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        match self {
            LogReal::NegInfinity => {
                assert!(r.is_positive(), "negative power of zero");
                LogReal::NegInfinity
            }
            LogReal::Exact(e) => LogReal::Exact(e.scale(r)),
            LogReal::Approx { value, tol } => {
                let rr = real_from_rational(r, value.precision().max(DEFAULT_PRECISION));
                let value = value * &rr;
                let tol = tol * r.abs().to_f64_lossy() + ulp_bound(&value);
                LogReal::Approx { value, tol }
            }
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    /// Best-effort ordering: exact when both sides are exact, otherwise by central values.
    pub fn cmp_approx(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogReal::NegInfinity, LogReal::NegInfinity) => Ordering::Equal,
            (LogReal::NegInfinity, _) => Ordering::Less,
            (_, LogReal::NegInfinity) => Ordering::Greater,
            (LogReal::Exact(a), LogReal::Exact(b)) => a.sub(b).signum(),
            _ => {
                let (a, _) = self.value(DEFAULT_PRECISION);
                let (b, _) = other.value(DEFAULT_PRECISION);
                a.partial_cmp(&b).unwrap_or(Ordering::Equal)
            }
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        if self.cmp_approx(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        if self.cmp_approx(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn log_plus(&self) -> Self {
        self.max(&Self::zero())
    }

    /// Checks `self ≤ other`, exactly when possible and otherwise up to the combined tolerance.
    pub fn compare_le(&self, other: &Self) -> Comparison {
        match (self, other) {
            (LogReal::NegInfinity, _) => Comparison { holds: true, exact: true, slack: None },
            (_, LogReal::NegInfinity) => Comparison {
                holds: false,
                exact: true,
                slack: None,
            },
            (LogReal::Exact(a), LogReal::Exact(b)) => {
                let d = b.sub(a);
                Comparison {
                    holds: d.signum() != Ordering::Less,
                    exact: true,
                    slack: Some(LogReal::Exact(d)),
                }
            }
            _ => {
                let slack = other.sub(self);
                let (v, tol) = slack.value(DEFAULT_PRECISION);
                Comparison {
                    holds: v.to_f64().value() >= -tol,
                    exact: false,
                    slack: Some(slack),
                }
            }
        }
    }

    /// Exact equality; approximate values never compare equal.
    pub fn exact_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (LogReal::NegInfinity, LogReal::NegInfinity) => true,
            (LogReal::Exact(a), LogReal::Exact(b)) => a.sub(b).is_zero(),
            _ => false,
        }
    }

    /// `|self − x| ≤ tol + self.tolerance()`.
    pub fn approx_eq(&self, x: f64, tol: f64) -> bool {
        (self.to_f64() - x).abs() <= tol + self.tolerance()
    }
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for Rational {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::MAX)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogReal::NegInfinity => write!(f, "-inf"),
            LogReal::Exact(e) => {
                let (v, _) = e.evaluate(DEFAULT_PRECISION);
                if e.terms().count() == 0 {
                    write!(f, "0")
                } else {
                    write!(f, "{} [= {}]", format_real(&v, 12), e)
                }
            }
            LogReal::Approx { value, tol } => {
                write!(f, "{} (±{:.1e})", format_real(value, 12), tol)
            }
        }
    }
}

impl Serialize for LogReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LogReal", 3)?;
        match self {
            LogReal::NegInfinity => {
                st.serialize_field("value", "-inf")?;
                st.serialize_field("tol", "0")?;
                st.serialize_field("exact", &Some("-inf"))?;
            }
            LogReal::Exact(e) => {
                let (v, _) = e.evaluate(DEFAULT_PRECISION);
                st.serialize_field("value", &format_real(&v, 30))?;
                st.serialize_field("tol", "0")?;
                st.serialize_field("exact", &Some(e.to_string()))?;
            }
            LogReal::Approx { value, tol } => {
                st.serialize_field("value", &format_real(value, 30))?;
                st.serialize_field("tol", &format!("{:.3e}", tol))?;
                st.serialize_field("exact", &Option::<String>::None)?;
            }
        }
        st.end()
    }
}
