use serde::Serialize;

use crate::arith::{abs_at_place, ExactLog, LogReal, Place, Prime, Rational};
use crate::field::conjugate_norm_max;
use crate::poly::BiPoly;
use crate::{Error, Result};

use super::lift::{compose_shifted, to_fpolys};
use super::PuiseuxSeries;

/// Order in `z` of `Q(z, f(z))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OrdZ {
    Exact {
        #[serde(serialize_with = "crate::report::ser_rational")]
        value: Rational,
    },
    /// `Q(z, f(z))` is identically zero.
    Infinite,
    /// No non-zero term is determined by the stored coefficients.
    Unresolved { truncation: i64 },
}

impl OrdZ {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            OrdZ::Exact { value } => Some(value),
            _ => None,
        }
    }
}

/// `ord_z Q(z, f(z))`, determined from the stored terms of `f` alone.
///
/// Writing `f = t^m v(t)` with `z = t^e` and `m = min(κ, 0)`, the composition equals
/// `t^{m n'} S(t)` where `n' = deg_w Q`; truncating `f` after index `K` leaves
/// `S mod t^{K − m + 1}` unchanged, so the first non-zero term below that index is the
/// true leading term.
pub fn ord_z_of_series_composition(q: &BiPoly, f: &PuiseuxSeries) -> OrdZ {
    let field = &f.field;
    let qs = to_fpolys(field, q);
    if qs.is_empty() {
        return OrdZ::Infinite;
    }
    let nq = qs.len() as i64 - 1;
    let (m, v) = f.laurent_shifted();
    let len = if f.exact {
        v.coeffs().len() * qs.len() + q.deg_z() as usize * f.e as usize + qs.len() * (-m) as usize + 1
    } else {
        (f.truncation - m + 1).max(0) as usize
    };
    let s = compose_shifted(field, &qs, f.e as usize, m, &v, len);
    match s.ord() {
        Some(o) => OrdZ::Exact { value: Rational::new((o as i64 + m * nq).into(), (f.e as i64).into()) },
        None if f.exact => OrdZ::Infinite,
        None => OrdZ::Unresolved { truncation: f.truncation },
    }
}

/// A bound `|a_k|_p ≤ A′·A^{k/e}` valid for every index beyond the truncation.
#[derive(Clone, Debug)]
pub struct TailBound {
    pub log_a_prime: LogReal,
    pub log_a: LogReal,
}

/// `log M(r) = max_k (log|a_k|_p + (k/e)·log r)` for `r = p^ρ`.
///
/// Without a tail bound this is the sup-norm of the stored truncation as a polynomial
/// (or of the whole series when it is exact). With a tail bound the value is certified for
/// the full series, provided the bound shows that no later term can exceed the maximum;
/// otherwise the result is [`Error::Unresolved`].
pub fn padic_sup_norm(f: &PuiseuxSeries, p: &Prime, rho: &Rational, tail: Option<&TailBound>) -> Result<LogReal> {
    let place = Place::Finite(p.clone());
    let e = Rational::from_integer((f.e as i64).into());
    let mut best = LogReal::NegInfinity;
    for (k, c) in f.indexed() {
        if c.is_zero() {
            continue;
        }
        let norm = match c.as_rational() {
            Some(r) => abs_at_place(&r, &place),
            None => conjugate_norm_max(&f.field, c, &place)?,
        };
        let kr = Rational::from_integer(k.into()) / &e * rho;
        let term = norm.add(&LogReal::Exact(ExactLog::prime_power(p, &kr)));
        best = best.max(&term);
    }
    let Some(tail) = tail else {
        return Ok(best);
    };
    if f.exact {
        return Ok(best);
    }
    let growth = tail.log_a.add(&LogReal::Exact(ExactLog::prime_power(p, rho)));
    let unresolved = || Error::Unresolved {
        what: format!("tail of the {}-adic sup-norm is not dominated", p),
        truncation: f.truncation,
    };
    let decreasing = growth.compare_le(&LogReal::zero());
    if !decreasing.holds {
        return Err(unresolved());
    }
    let next = Rational::new((f.truncation + 1).into(), (f.e as i64).into());
    let first_tail = tail.log_a_prime.add(&growth.scale(&next));
    if first_tail.compare_le(&best).holds {
        Ok(best)
    } else {
        Err(unresolved())
    }
}
