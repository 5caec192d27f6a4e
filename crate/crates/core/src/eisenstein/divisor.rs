use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::arith::primes::{primes_up_to, prime_divisors};
use crate::arith::{LogReal, Place, Prime, Rational, DEFAULT_PRECISION};
use crate::poly::{complex_roots, height_poly, k_normalize, norm_at_place, resultant_with_derivative, BiPoly, UniPoly};
use crate::{Error, NormalizationRecord, Result};

/// Which of the coefficient estimates a divisor is built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Power series: `|a_k|_v ≤ A′_v A_v^k`.
    Regular,
    /// Puiseux series: `|a_k|_v ≤ A′_v A_v^{k/e − ⌊κ/e⌋}`.
    General,
    /// Power series, `A′` replaced by `max{1, |a_0|_v}`.
    A0Regular,
    /// Puiseux series, `A′` replaced by `max{1, |a_{e⌊κ/e⌋}|_v}`.
    A0General,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Regular, Variant::General, Variant::A0Regular, Variant::A0General];

    pub fn is_a0(self) -> bool {
        matches!(self, Variant::A0Regular | Variant::A0General)
    }

    pub fn is_regular(self) -> bool {
        matches!(self, Variant::Regular | Variant::A0Regular)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Regular => "regular",
            Variant::General => "general",
            Variant::A0Regular => "a0-regular",
            Variant::A0General => "a0-general",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the archimedean radius term is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorMode {
    /// `2|R_P/γ|_∞`, exact.
    #[default]
    Coefficient,
    /// `σ(R_P)^{-1}` from certified roots of `R_P`.
    RootBased,
}

/// `c(p, n)`: `1` when `n < p ≤ ∞`, `np` when `p ≤ n`.
pub fn c_factor(v: &Place, n: u64) -> BigUint {
    match v {
        Place::Infinite => BigUint::one(),
        Place::Finite(p) => {
            let p = p.as_biguint();
            if *p <= BigUint::from(n) {
                p * n
            } else {
                BigUint::one()
            }
        }
    }
}

/// A map `v ↦ log A_v` with finite support; places not stored have `A_v = 1`.
#[derive(Clone, Debug, Default)]
pub struct MDivisor {
    values: BTreeMap<Place, LogReal>,
}

impl MDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Place, log_a: LogReal) {
        self.values.insert(v, log_a);
    }

    pub fn get(&self, v: &Place) -> LogReal {
        self.values.get(v).cloned().unwrap_or_else(LogReal::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &LogReal)> {
        self.values.iter()
    }

    /// `h(A) = Σ_v log⁺ A_v`.
    pub fn height(&self) -> LogReal {
        self.values.values().fold(LogReal::zero(), |acc, x| acc.add(&x.log_plus()))
    }

    /// Every `A_v ≥ 1`.
    pub fn is_effective(&self) -> bool {
        self.values.values().all(|x| LogReal::zero().compare_le(x).holds)
    }
}

/// The quantities of `P` that every local divisor is assembled from.
#[derive(Clone, Debug)]
pub struct DivisorInputs {
    /// The normalized polynomial.
    pub p: BiPoly,
    pub n: u32,
    /// `R_P / γ`.
    pub r_over_gamma: UniPoly,
    /// `μ = ord_z R_P`.
    pub mu: usize,
    /// Upper bound for `log σ(R_P)^{-1}`, when the root-based mode was requested.
    log_inv_sigma: Option<LogReal>,
}

impl DivisorInputs {
    /// Requires `P` to be normalized already (`P(0, w)` monic, `z ∤ P`).
    pub fn new(p_norm: &BiPoly, mode: DivisorMode) -> Result<Self> {
        if p_norm.deg_w() == 0 {
            return Err(Error::Domain("P has no w-dependence".into()));
        }
        let q = p_norm.at_z0();
        if q.is_zero() || !q.lead().is_one() {
            return Err(Error::Precondition("P(0, w) must be monic; normalize P first".into()));
        }
        let r = resultant_with_derivative(p_norm)?;
        if r.is_zero() {
            return Err(Error::NotSeparable);
        }
        let (mu, gamma) = r.lowest_term()?;
        let r_over_gamma = r.scale(&gamma.recip());
        let log_inv_sigma = match mode {
            DivisorMode::Coefficient => None,
            DivisorMode::RootBased => Some(log_inv_sigma(&r_over_gamma.shift_down(mu))?),
        };
        Ok(DivisorInputs { p: p_norm.clone(), n: p_norm.deg_w(), r_over_gamma, mu, log_inv_sigma })
    }

    pub fn log_norm_p(&self, v: &Place) -> LogReal {
        norm_at_place(self.p.coefficients(), v)
    }

    pub fn log_norm_r(&self, v: &Place) -> LogReal {
        norm_at_place(self.r_over_gamma.coeffs(), v)
    }

    /// Places where some `A_v` or `A′_v` may exceed `1`: infinity, primes up to `n`, and
    /// primes dividing a denominator of `P` or of `R_P/γ`. At every other prime all the
    /// quantities are units and `A_v = A′_v = 1`.
    pub fn support(&self) -> Vec<Place> {
        let mut primes: Vec<BigUint> = primes_up_to(self.n as u64).into_iter().map(BigUint::from).collect();
        let den = self
            .p
            .coefficients()
            .chain(self.r_over_gamma.coeffs().iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        for p in prime_divisors(&den.magnitude().clone()) {
            primes.push(p.as_biguint().clone());
        }
        primes.sort();
        primes.dedup();
        std::iter::once(Place::Infinite)
            .chain(primes.into_iter().map(|p| Place::Finite(Prime::new_unchecked(p))))
            .collect()
    }

    /// `(log A′_v, log A_v)` for the given ramification index and variant.
    pub fn local(&self, v: &Place, e: u32, variant: Variant) -> (LogReal, LogReal) {
        let n = self.n as i64;
        let e_eff = if variant.is_regular() { 1 } else { e as i64 };
        let lp = self.log_norm_p(v);
        let lr = self.log_norm_r(v);
        let xi = match v {
            Place::Infinite => {
                let radius = match &self.log_inv_sigma {
                    Some(s) => s.clone(),
                    None => LogReal::log_of_int(2).add(&lr),
                };
                radius.max(&LogReal::log_of_int(6).add(&lp).scale_int(n))
            }
            Place::Finite(_) => {
                let c = LogReal::log_of(&Rational::from_integer(BigInt::from(c_factor(v, n as u64))));
                c.scale_int(e_eff).add(&lr).max(&lp.scale_int(n))
            }
        };
        let a_prime = match v {
            Place::Infinite => LogReal::log_of_int(3).add(&lp),
            Place::Finite(_) => lp.clone(),
        };
        match variant {
            Variant::Regular | Variant::General => (a_prime, xi),
            Variant::A0Regular | Variant::A0General => {
                let factor = match v {
                    Place::Infinite => LogReal::log_of_int(8).add(&lp),
                    Place::Finite(_) => lp,
                };
                (LogReal::zero(), factor.scale_int(e_eff).add(&xi))
            }
        }
    }
}

/// Upper bound for `log σ(R)^{-1}` where `R(0) ≠ 0`; `−∞` when `R` is constant.
fn log_inv_sigma(r: &UniPoly) -> Result<LogReal> {
    if r.deg() == 0 {
        return Ok(LogReal::NegInfinity);
    }
    let roots = complex_roots(r, DEFAULT_PRECISION)?;
    let closest = roots
        .iter()
        .min_by(|a, b| a.abs_lower().partial_cmp(&b.abs_lower()).expect("finite"))
        .expect("deg ≥ 1");
    let lower = closest.abs_lower();
    if lower <= 0.0 {
        return Err(Error::Numerical("a root of R_P could not be separated from 0".into()));
    }
    let value = -closest.center.abs().ln();
    let tol = closest.radius / lower + 1e-30;
    Ok(LogReal::approx(value, tol))
}

/// `(log A′_v, log A_v)` for a normalized `P` at one place.
pub fn local_divisor(p_norm: &BiPoly, v: &Place, e: u32, variant: Variant) -> Result<(LogReal, LogReal)> {
    Ok(DivisorInputs::new(p_norm, DivisorMode::Coefficient)?.local(v, e, variant))
}

/// Right-hand side of the divisor-height inequality for the given variant.
pub fn theorem_height_bound(m: u32, n: u32, e: u32, variant: Variant, h_p: &LogReal) -> Result<LogReal> {
    if m == 0 || n == 0 || e == 0 {
        return Err(Error::Precondition(format!("need m, n, e ≥ 1 (got m = {m}, n = {n}, e = {e})")));
    }
    let (n, e) = (n as i64, e as i64);
    let (h_coeff, constant) = match variant {
        Variant::Regular => (3 * n - 1, 7 * n),
        Variant::General => (3 * n - 1, 7 * e * n),
        Variant::A0Regular => (3 * n, 10 * n),
        Variant::A0General => (3 * n + e - 1, 10 * e * n),
    };
    let log_mn = LogReal::log_of_int(m as u64 * n as u64).scale_int(3 * n);
    Ok(h_p
        .scale_int(h_coeff)
        .add(&log_mn)
        .add(&LogReal::constant(&Rational::from_integer(constant.into()))))
}

/// `h(P) + log 3`, the bound for `h(A′)`.
pub fn a_prime_height_bound(h_p: &LogReal) -> LogReal {
    h_p.add(&LogReal::log_of_int(3))
}

/// The inputs from which a certificate is assembled, before any branch is checked.
#[derive(Clone, Debug)]
pub(crate) struct DivisorPair {
    pub normalization: NormalizationRecord,
    pub normalized: BiPoly,
    pub a: MDivisor,
    pub a_prime: MDivisor,
}

/// Normalizes `P` as the variant requires and builds `A′` and `A` over the full support.
pub(crate) fn build_divisors(p: &BiPoly, e: u32, kappa: i64, variant: Variant, mode: DivisorMode) -> Result<DivisorPair> {
    if e == 0 {
        return Err(Error::Precondition("ramification index must be positive".into()));
    }
    if variant.is_regular() && (e != 1 || kappa < 0) {
        return Err(Error::Precondition(format!(
            "the {variant} variant covers power series only (got e = {e}, κ = {kappa}); use a general variant"
        )));
    }
    let k = if variant.is_regular() { 0 } else { kappa.div_euclid(e as i64) };
    let (normalized, normalization) = k_normalize(p, k)?;
    let inputs = DivisorInputs::new(&normalized, mode)?;
    let mut a = MDivisor::new();
    let mut a_prime = MDivisor::new();
    for v in inputs.support() {
        let (ap, av) = inputs.local(&v, e, variant);
        a.insert(v.clone(), av);
        if !variant.is_a0() {
            a_prime.insert(v, ap);
        }
    }
    Ok(DivisorPair { normalization, normalized, a, a_prime })
}

/// `h(P)`, rejecting the zero polynomial.
pub(crate) fn projective_height(p: &BiPoly) -> Result<LogReal> {
    height_poly(p)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_bipoly;

    fn place(p: u64) -> Place {
        Place::Finite(Prime::from_u64(p).unwrap())
    }

    #[test]
    fn c_factor_cases() {
        assert_eq!(c_factor(&place(5), 3), BigUint::from(1u8));
        assert_eq!(c_factor(&place(2), 2), BigUint::from(4u8));
        assert_eq!(c_factor(&Place::Infinite, 7), BigUint::from(1u8));
        assert_eq!(c_factor(&place(3), 7), BigUint::from(21u8));
    }

    #[test]
    fn binomial_local_values() {
        let p = parse_bipoly("w^2 - z - 1").unwrap();
        let (ap, a) = local_divisor(&p, &place(2), 1, Variant::Regular).unwrap();
        assert!(ap.exact_eq(&LogReal::zero()) && a.exact_eq(&LogReal::log_of_int(4)));
        let (ap, a) = local_divisor(&p, &Place::Infinite, 1, Variant::Regular).unwrap();
        assert!(ap.exact_eq(&LogReal::log_of_int(3)) && a.exact_eq(&LogReal::log_of_int(36)));
        let (ap, a) = local_divisor(&p, &place(5), 1, Variant::Regular).unwrap();
        assert!(ap.exact_eq(&LogReal::zero()) && a.exact_eq(&LogReal::zero()));
    }

    #[test]
    fn a0_local_values() {
        let p = parse_bipoly("w^2 - z - 1").unwrap();
        let (ap, a) = local_divisor(&p, &Place::Infinite, 1, Variant::A0Regular).unwrap();
        assert!(ap.exact_eq(&LogReal::zero()));
        assert!(a.exact_eq(&LogReal::log_of_int(8 * 36)));
        let (_, a) = local_divisor(&p, &place(2), 1, Variant::A0Regular).unwrap();
        assert!(a.exact_eq(&LogReal::log_of_int(4)));
        let (_, a) = local_divisor(&p, &Place::Infinite, 2, Variant::A0General).unwrap();
        assert!(a.exact_eq(&LogReal::log_of_int(64 * 36)));
    }

    #[test]
    fn bounds_by_formula() {
        let h0 = LogReal::zero();
        let ln2 = std::f64::consts::LN_2;
        let b = theorem_height_bound(1, 2, 1, Variant::Regular, &h0).unwrap();
        assert!(b.approx_eq(6.0 * ln2 + 14.0, 1e-12));
        let b = theorem_height_bound(1, 2, 2, Variant::General, &h0).unwrap();
        assert!(b.approx_eq(6.0 * ln2 + 28.0, 1e-12));
        let b = theorem_height_bound(1, 2, 1, Variant::A0Regular, &h0).unwrap();
        assert!(b.approx_eq(6.0 * ln2 + 20.0, 1e-12));
        let b = theorem_height_bound(2, 3, 2, Variant::A0General, &LogReal::log_of_int(5)).unwrap();
        assert!(b.approx_eq(10.0 * 5f64.ln() + 9.0 * 6f64.ln() + 60.0, 1e-12));
        assert!(theorem_height_bound(0, 2, 1, Variant::Regular, &h0).is_err());
    }

    #[test]
    fn support_uses_denominators() {
        let p = parse_bipoly("w^2 - z/15 - 1").unwrap();
        let inputs = DivisorInputs::new(&p, DivisorMode::Coefficient).unwrap();
        let s: Vec<String> = inputs.support().iter().map(|v| v.to_string()).collect();
        assert_eq!(s, vec!["inf", "2", "3", "5"]);
    }

    #[test]
    fn root_based_is_sharper_at_infinity() {
        let p = parse_bipoly("w^2 - z - 1").unwrap();
        let coeff = DivisorInputs::new(&p, DivisorMode::Coefficient).unwrap();
        let roots = DivisorInputs::new(&p, DivisorMode::RootBased).unwrap();
        // σ(R_P) = 1 here, so both give (6|P|)^2 = 36
        let (_, a1) = coeff.local(&Place::Infinite, 1, Variant::Regular);
        let (_, a2) = roots.local(&Place::Infinite, 1, Variant::Regular);
        assert!(a2.compare_le(&a1).holds);
        assert!(a2.approx_eq(36f64.ln(), 1e-20));
        let p = parse_bipoly("w^2 - 100z - 1").unwrap();
        let r = DivisorInputs::new(&p, DivisorMode::RootBased).unwrap();
        assert!(r.log_inv_sigma.as_ref().unwrap().approx_eq(100f64.ln(), 1e-20));
    }

    #[test]
    fn rejects_unnormalized_and_inseparable() {
        let p = parse_bipoly("2w^2 - z - 1").unwrap();
        assert!(matches!(DivisorInputs::new(&p, DivisorMode::Coefficient), Err(Error::Precondition(_))));
        let p = parse_bipoly("(w - z)^2").unwrap();
        assert!(matches!(DivisorInputs::new(&p, DivisorMode::Coefficient), Err(Error::NotSeparable)));
    }
}
