//! Checkers for the auxiliary polynomial inequalities: root bounds, translation, the
//! height of `R_P` and Mahler's bound on the heights of all roots.
//!
//! Each checker evaluates both sides and reports whether the inequality holds; a
//! violation beyond [`TOLERANCE`] would indicate an arithmetic bug.

use serde::Serialize;

use crate::arith::{abs_at_place, real_from_f64, ExactLog, LogReal, Place, Prime, Real};
use crate::field::{height_algnum, height_rational, mahler_height, newton_polygon_padic, roots_in_field, FPoly};
use crate::poly::{complex_roots, height_poly, height_uni, norm_at_place, resultant_with_derivative, BiPoly, UniPoly};
use crate::{NumberField, Rational, Result};

/// Slack allowed on top of the numerical tolerance carried by approximate sides.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    RootUpper,
    RootLower,
    Translation,
    ResultantHeight,
    OneRoot,
    AllRoots,
}

impl Inequality {
    pub fn name(self) -> &'static str {
        match self {
            Inequality::RootUpper => "root-upper",
            Inequality::RootLower => "root-lower",
            Inequality::Translation => "translation",
            Inequality::ResultantHeight => "resultant-height",
            Inequality::OneRoot => "one-root",
            Inequality::AllRoots => "all-roots",
        }
    }
}

/// One instance of `lhs ≤ rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityCheck {
    pub kind: Inequality,
    pub place: Place,
    pub lhs: LogReal,
    pub rhs: LogReal,
    pub holds: bool,
    pub exact: bool,
}

impl InequalityCheck {
    pub fn new(kind: Inequality, place: Place, lhs: LogReal, rhs: LogReal) -> Self {
        let c = lhs.compare_le(&rhs);
        let holds = c.holds
            || c.slack.as_ref().is_some_and(|s| s.to_f64() >= -(TOLERANCE + s.tolerance()));
        InequalityCheck { kind, place, lhs, rhs, holds, exact: c.exact }
    }

    /// `rhs − lhs` as a float.
    pub fn slack(&self) -> f64 {
        self.rhs.to_f64() - self.lhs.to_f64()
    }
}

fn nonzero_part(p: &UniPoly) -> (usize, UniPoly) {
    let m = p.ord().unwrap_or(0);
    (m, p.shift_down(m))
}

fn real_log_plus_tol(x: &Real, rel: f64) -> LogReal {
    LogReal::approx(x.ln(), rel)
}

/// Both root bounds at the archimedean place and at the supplied primes:
/// `|a_m| / (c|P|) ≤ |α| ≤ c|P| / |a_n|` for every non-zero root `α`, with `c = 2` at
/// infinity and `c = 1` at a prime, `m` being the order of `0` as a root.
pub fn root_bounds(p: &UniPoly, primes: &[Prime], prec: usize) -> Result<Vec<InequalityCheck>> {
    let (m, q) = nonzero_part(p);
    let mut out = Vec::new();
    if q.deg() == 0 {
        return Ok(out);
    }
    let (a_m, a_n) = (p.coeff(m), p.lead());
    let inf = Place::Infinite;
    let log_p = norm_at_place(p.coeffs(), &inf);
    let log2 = LogReal::log_of_int(2);
    let upper = log2.add(&log_p).sub(&abs_at_place(&a_n, &inf));
    let lower = abs_at_place(&a_m, &inf).sub(&log2).sub(&log_p);
    for r in complex_roots(&q, prec)? {
        let centre = r.center.abs();
        let radius = real_from_f64(r.radius, prec);
        let rel = 2f64.powi(-(prec as i32 - 8));
        let hi = real_log_plus_tol(&(&centre + &radius), rel);
        let lo = real_log_plus_tol(&(&centre - &radius), rel);
        for _ in 0..r.multiplicity {
            out.push(InequalityCheck::new(Inequality::RootUpper, inf.clone(), hi.clone(), upper.clone()));
            out.push(InequalityCheck::new(Inequality::RootLower, inf.clone(), lower.clone(), lo.clone()));
        }
    }
    for prime in primes {
        let v = Place::Finite(prime.clone());
        let log_p = norm_at_place(p.coeffs(), &v);
        let upper = log_p.sub(&abs_at_place(&a_n, &v));
        let lower = abs_at_place(&a_m, &v).sub(&log_p);
        // an edge of slope s carries `count` roots with |α|_p = p^s
        for (slope, count) in newton_polygon_padic(&q, prime)?.slopes {
            let abs = LogReal::Exact(ExactLog::prime_power(prime, &slope));
            for _ in 0..count {
                out.push(InequalityCheck::new(Inequality::RootUpper, v.clone(), abs.clone(), upper.clone()));
                out.push(InequalityCheck::new(Inequality::RootLower, v.clone(), lower.clone(), abs.clone()));
            }
        }
    }
    Ok(out)
}

/// `h(P(z, w + α)) ≤ h(P) + n ĥ(α) + n log 2 + log(n + 1)`.
pub fn translation_bound(p: &BiPoly, alpha: &Rational) -> Result<InequalityCheck> {
    let n = p.deg_w() as i64;
    let lhs = height_poly(&p.shift_w(alpha))?;
    let h_alpha = height_rational(alpha);
    let rhs = height_poly(p)?
        .add(&h_alpha.scale_int(n))
        .add(&LogReal::log_of_int(2).scale_int(n))
        .add(&LogReal::log_of_int(n as u64 + 1));
    Ok(InequalityCheck::new(Inequality::Translation, Place::Infinite, lhs, rhs))
}

/// `h(R_P) ≤ (2n − 1) h(P) + (2n − 1) log((m + 1)(n + 1)√n)`.
pub fn resultant_height_bound(p: &BiPoly) -> Result<InequalityCheck> {
    let (m, n) = (p.deg_z() as u64, p.deg_w() as u64);
    let r = resultant_with_derivative(p)?;
    let lhs = if r.is_zero() { LogReal::NegInfinity } else { height_uni(&r)? };
    let half = Rational::new(1.into(), 2.into());
    let k = 2 * n as i64 - 1;
    let rhs = height_poly(p)?
        .add(&LogReal::log_of_int((m + 1) * (n + 1)))
        .add(&LogReal::log_of_int(n).scale(&half))
        .scale_int(k);
    Ok(InequalityCheck::new(Inequality::ResultantHeight, Place::Infinite, lhs, rhs))
}

/// Mahler's bound `Σ ĥ(α_i) ≤ h(P) + log(m + 1)` over all roots with multiplicity, and
/// `ĥ(α) ≤ h(P) + log 2` for each rational root.
///
/// For a primitive integer polynomial the left side of the first inequality is exactly
/// `log M(P)`, since the Mahler measure is multiplicative over the irreducible factors.
pub fn mahler_bounds(p: &UniPoly, prec: usize) -> Result<Vec<InequalityCheck>> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return Ok(out);
    }
    let h = height_uni(p)?;
    let m = p.deg() as u64;
    let lhs = mahler_height(p, prec)?;
    out.push(InequalityCheck::new(Inequality::AllRoots, Place::Infinite, lhs, h.add(&LogReal::log_of_int(m + 1))));
    let q = NumberField::rationals();
    let roots = roots_in_field(&FPoly::from_rational_poly(&q, p), &q)?;
    let rhs = h.add(&LogReal::log_of_int(2));
    for a in &roots.roots {
        out.push(InequalityCheck::new(Inequality::OneRoot, Place::Infinite, height_algnum(&q, a)?, rhs.clone()));
    }
    Ok(out)
}

/// Every checker applied to one polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<InequalityCheck>,
    pub violations: usize,
    /// Smallest `rhs − lhs` per inequality kind.
    pub min_slack: Vec<(Inequality, f64)>,
}

impl LemmaReport {
    pub fn from_checks(checks: Vec<InequalityCheck>) -> Self {
        let violations = checks.iter().filter(|c| !c.holds).count();
        let mut min_slack: Vec<(Inequality, f64)> = Vec::new();
        for c in &checks {
            let s = c.slack();
            match min_slack.iter_mut().find(|(k, _)| *k == c.kind) {
                Some((_, m)) => *m = m.min(s),
                None => min_slack.push((c.kind, s)),
            }
        }
        LemmaReport { checks, violations, min_slack }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Runs the checkers on `P(z, w)`: the resultant bound and the translations by `alphas`
/// on `P` itself, and the root and Mahler bounds on `P(0, w)` and on `R_P(z)`.
pub fn check_polynomial(p: &BiPoly, alphas: &[Rational], primes: &[Prime], prec: usize) -> Result<LemmaReport> {
    let mut checks = vec![resultant_height_bound(p)?];
    for a in alphas {
        checks.push(translation_bound(p, a)?);
    }
    let mut unis = vec![p.at_z0()];
    let r = resultant_with_derivative(p)?;
    if !r.is_zero() {
        unis.push(r);
    }
    for u in unis.iter().filter(|u| !u.is_zero() && u.deg() > 0) {
        checks.extend(root_bounds(u, primes, prec)?);
        checks.extend(mahler_bounds(u, prec)?);
    }
    Ok(LemmaReport::from_checks(checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_bipoly;

    fn prime(p: u64) -> Prime {
        Prime::from_u64(p).unwrap()
    }

    #[test]
    fn root_bounds_hold_with_zero_roots() {
        let q = UniPoly::from_ints(&[0, 0, 6, -5, 1]);
        let checks = root_bounds(&q, &[prime(2), prime(3)], 128).unwrap();
        assert_eq!(checks.len(), 4 + 2 * 2 * 2);
        assert!(checks.iter().all(|c| c.holds));
    }

    #[test]
    fn translation_of_binomial() {
        let p = parse_bipoly("w^2 - z - 1").unwrap();
        // (w + 3)^2 - z - 1 = w^2 + 6w - z + 8: h = log 8 ≤ 2 log 3 + 2 log 2 + log 3
        let c = translation_bound(&p, &Rational::from_integer(3.into())).unwrap();
        assert!(c.exact && c.holds);
        assert!(c.lhs.exact_eq(&LogReal::log_of_int(8)));
    }

    #[test]
    fn resultant_height_of_binomial() {
        let p = parse_bipoly("w^2 - z - 1").unwrap();
        let c = resultant_height_bound(&p).unwrap();
        // R = ±4(z + 1) is projectively z + 1, of height 0
        assert!(c.lhs.exact_eq(&LogReal::zero()));
        assert!(c.holds);
    }

    #[test]
    fn mahler_bound_and_rational_roots() {
        let q = UniPoly::from_ints(&[-6, 1, 1]);
        let checks = mahler_bounds(&q, 128).unwrap();
        // M((x + 3)(x - 2)) = 6 against the bound log 6 + log 3
        assert!(checks[0].lhs.approx_eq(6f64.ln(), 1e-12));
        assert_eq!(checks.iter().filter(|c| c.kind == Inequality::OneRoot).count(), 2);
        assert!(checks.iter().all(|c| c.holds));
    }
}
