use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::newton::newton_polygon_padic;
use super::{AlgNum, NumberField};
use crate::arith::{abs_at_place, real_from_f64, ExactLog, LogReal, Place, Rational};
use crate::poly::{complex_roots, UniPoly};
use crate::Result;

/// `log max_σ |σ(a)|_v` over all extensions of `v` to the algebraic closure.
///
/// At a finite place this is read off the Newton polygon of the minimal polynomial and is
/// exact; at infinity it is the largest embedding modulus. Zero maps to `−∞`.
pub fn conjugate_norm_max(field: &NumberField, a: &AlgNum, v: &Place) -> Result<LogReal> {
    Ok(conjugate_norms(field, a, std::slice::from_ref(v))?.pop().expect("one place"))
}

/// [`conjugate_norm_max`] at several places, sharing the minimal polynomial.
pub fn conjugate_norms(field: &NumberField, a: &AlgNum, places: &[Place]) -> Result<Vec<LogReal>> {
    if a.is_zero() {
        return Ok(vec![LogReal::NegInfinity; places.len()]);
    }
    if let Some(q) = a.as_rational() {
        return Ok(places.iter().map(|v| abs_at_place(&q, v)).collect());
    }
    let mut min_poly: Option<UniPoly> = None;
    let mut out = Vec::with_capacity(places.len());
    for v in places {
        match v {
            Place::Infinite => out.push(archimedean_max(field, a)),
            Place::Finite(p) => {
                if min_poly.is_none() {
                    min_poly = Some(field.min_poly(a)?);
                }
                let np = newton_polygon_padic(min_poly.as_ref().expect("set"), p)?;
                let s = np.max_slope().cloned().unwrap_or_else(Rational::zero);
                out.push(LogReal::Exact(ExactLog::prime_power(p, &s)));
            }
        }
    }
    Ok(out)
}

fn archimedean_max(field: &NumberField, a: &AlgNum) -> LogReal {
    let mut best: Option<(f64, LogReal)> = None;
    for i in 0..field.degree() {
        let (val, err) = field.embed(a, i);
        let modulus = val.abs();
        let m = modulus.to_f64().value();
        let lower = (m - err).max(f64::MIN_POSITIVE);
        let tol = err / lower + 2f64.powi(-(field.precision() as i32 - 8));
        let l = LogReal::approx(modulus.ln(), tol);
        if best.as_ref().is_none_or(|(bm, _)| m > *bm) {
            best = Some((m, l));
        }
    }
    best.expect("degree ≥ 1").1
}

/// Absolute logarithmic height `ĥ(a)`.
///
/// Rationals `a/b` in lowest terms give `log max(|a|, |b|)` exactly; otherwise the
/// Mahler measure of the primitive integer minimal polynomial is divided by its degree.
pub fn height_algnum(field: &NumberField, a: &AlgNum) -> Result<LogReal> {
    if let Some(q) = a.as_rational() {
        return Ok(height_rational(&q));
    }
    let m = field.min_poly(a)?;
    Ok(mahler_height(&m, field.precision())?.scale(&Rational::new(1.into(), m.deg().into())))
}

pub fn height_rational(q: &Rational) -> LogReal {
    if q.is_zero() {
        return LogReal::zero();
    }
    let big = q.numer().abs().max(q.denom().clone());
    LogReal::Exact(ExactLog::of(&Rational::from_integer(big)))
}

/// `log M(h)` for the primitive integer form of `h`: `log |lead| + Σ log⁺ |α_i|`.
pub fn mahler_height(h: &UniPoly, prec: usize) -> Result<LogReal> {
    let ints = h.primitive_integer();
    let lead = ints.last().cloned().unwrap_or_else(BigInt::zero);
    let mut acc = LogReal::Exact(ExactLog::of(&Rational::from_integer(lead.abs())));
    for r in complex_roots(h, prec)? {
        let upper = r.abs_upper();
        if upper <= 1.0 {
            continue;
        }
        let m = r.center.abs();
        let centre = m.to_f64().value();
        let lower = r.abs_lower().max(f64::MIN_POSITIVE);
        let tol = (upper / lower).ln() + 2f64.powi(-(prec as i32 - 8));
        let term = if centre > 1.0 {
            LogReal::approx(m.ln(), tol)
        } else {
            // The disc straddles the unit circle: log⁺ lies in [0, log upper].
            LogReal::approx(real_from_f64(0.0, prec), upper.ln())
        };
        acc = acc.add(&term.scale(&Rational::from_integer(r.multiplicity.to_i64().unwrap_or(1).into())));
    }
    Ok(acc)
}
