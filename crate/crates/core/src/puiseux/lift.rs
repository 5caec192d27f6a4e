use std::sync::Arc;

use crate::field::{AlgNum, FPoly, NumberField};
use crate::poly::BiPoly;
use crate::{Error, Result};

use super::PuiseuxSeries;

/// `w`-coefficients of `P`, mapped into `F[z]`.
pub(crate) fn to_fpolys(field: &NumberField, p: &BiPoly) -> Vec<FPoly> {
    p.w_coeffs().iter().map(|q| FPoly::from_rational_poly(field, q)).collect()
}

/// `q(t^e)`.
pub(crate) fn spread(field: &NumberField, q: &FPoly, e: usize) -> FPoly {
    if e == 1 || q.is_zero() {
        return q.clone();
    }
    let mut v = vec![field.zero(); (q.coeffs().len() - 1) * e + 1];
    for (i, c) in q.coeffs().iter().enumerate() {
        v[i * e] = c.clone();
    }
    FPoly::new(v)
}

fn shift_up(field: &NumberField, q: &FPoly, k: usize) -> FPoly {
    if q.is_zero() || k == 0 {
        return q.clone();
    }
    let mut v = vec![field.zero(); k];
    v.extend(q.coeffs().iter().cloned());
    FPoly::new(v)
}

/// Power-series inverse of `u` modulo `t^n`.
pub(crate) fn inv_series(field: &NumberField, u: &FPoly, n: usize) -> Result<FPoly> {
    let u0 = u.coeff(field, 0);
    let inv0 = field.inv(&u0)?;
    let mut v: Vec<AlgNum> = Vec::with_capacity(n);
    v.push(inv0.clone());
    let uc = u.coeffs();
    for k in 1..n {
        let mut acc = field.zero();
        for i in 1..=k.min(uc.len().saturating_sub(1)) {
            if !uc[i].is_zero() && !v[k - i].is_zero() {
                acc = field.add(&acc, &field.mul(&uc[i], &v[k - i]));
            }
        }
        v.push(field.neg(&field.mul(&inv0, &acc)));
    }
    Ok(FPoly::new(v))
}

/// `Σ_j g_j(t) f(t)^j mod t^n`.
pub(crate) fn eval_w_trunc(field: &NumberField, g: &[FPoly], f: &FPoly, n: usize) -> FPoly {
    let mut acc = FPoly::zero();
    for gj in g.iter().rev() {
        acc = acc.mul_trunc(field, f, n).add(field, &gj.truncate(n));
    }
    acc
}

/// `∂/∂w` of a polynomial given by its `w`-coefficients.
pub(crate) fn derivative_w(field: &NumberField, g: &[FPoly]) -> Vec<FPoly> {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(j, q)| q.scale_rational(field, &crate::arith::Rational::from_integer(j.into())))
        .collect()
}

/// The power series root `f ≡ a0 (mod t)` of `G(t, w) = 0`, modulo `t^n`, by Newton
/// iteration with doubling precision. Requires `G(0, a0) = 0` and `G_w(0, a0) ≠ 0`.
pub(crate) fn newton_lift(field: &NumberField, g: &[FPoly], a0: &AlgNum, n: usize) -> Result<FPoly> {
    let dg = derivative_w(field, g);
    let mut f = FPoly::new(vec![a0.clone()]);
    let mut prec = 1usize;
    while prec < n {
        prec = (2 * prec).min(n);
        let val = eval_w_trunc(field, g, &f, prec);
        if val.is_zero() {
            continue;
        }
        let der = eval_w_trunc(field, &dg, &f, prec);
        let corr = val.mul_trunc(field, &inv_series(field, &der, prec)?, prec);
        f = f.sub(field, &corr);
    }
    Ok(f.truncate(n))
}

/// `S(t) = Σ_j q_j(t^e) t^{−m(n−j)} v(t)^j mod t^len`, so that `Q(t^e, t^m v) = t^{mn} S(t)`.
pub(crate) fn compose_shifted(field: &NumberField, q: &[FPoly], e: usize, m: i64, v: &FPoly, len: usize) -> FPoly {
    debug_assert!(m <= 0);
    let n = q.len().saturating_sub(1);
    let mut acc = FPoly::zero();
    for (j, qj) in q.iter().enumerate().rev() {
        let term = shift_up(field, &spread(field, qj, e), (-m) as usize * (n - j));
        acc = acc.mul_trunc(field, v, len).add(field, &term.truncate(len));
    }
    acc
}

/// Checks `ord_t P(t^e, f_K(t)) ≥ K + 1 + (n − 1)·min(κ, 0)` exactly, which is what a correct
/// truncation at index `K` must satisfy (`ord_z P(z, f) > K/e` when `κ ≥ 0`).
pub fn residue_check(p: &BiPoly, f: &PuiseuxSeries) -> Result<()> {
    let field = &f.field;
    let q = to_fpolys(field, p);
    let (m, v) = f.laurent_shifted();
    let len = if f.exact {
        v.coeffs().len() * q.len() + p.deg_z() as usize * f.e as usize + q.len() * (-m) as usize + 1
    } else {
        (f.truncation - m + 1).max(0) as usize
    };
    let s = compose_shifted(field, &q, f.e as usize, m, &v, len);
    if s.is_zero() {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "residue check failed: P(z, f) has a term of index {} below the guaranteed order",
            s.ord().unwrap_or(0) as i64 + m * (q.len() as i64 - 1)
        )))
    }
}

/// The unique power series root with `f(0) = a0` of a polynomial satisfying the implicit
/// function theorem condition at `(0, a0)`, expanded to `z^K`.
pub fn expand_regular(p: &BiPoly, a0: &AlgNum, k: usize, field: Arc<NumberField>) -> Result<PuiseuxSeries> {
    let g = to_fpolys(&field, p);
    if g.is_empty() {
        return Err(Error::Domain("P is the zero polynomial".into()));
    }
    let at0: Vec<AlgNum> = g.iter().map(|q| q.coeff(&field, 0)).collect();
    let p0 = FPoly::new(at0);
    if !p0.eval(&field, a0).is_zero() {
        return Err(Error::Domain(format!("P(0, a0) ≠ 0 for a0 = {}", a0)));
    }
    if p0.derivative(&field).eval(&field, a0).is_zero() {
        return Err(Error::Domain(format!("P'_w(0, a0) = 0 for a0 = {}; the point is singular", a0)));
    }
    let f = newton_lift(&field, &g, a0, k + 1)?;
    let series = PuiseuxSeries {
        coeffs: (0..=k).map(|i| f.coeff(&field, i)).collect(),
        field,
        e: 1,
        kappa: 0,
        truncation: k as i64,
        exact: false,
        generators_until: 0,
    };
    residue_check(p, &series)?;
    Ok(series)
}
