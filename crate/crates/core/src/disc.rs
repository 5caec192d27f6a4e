//! Discriminant bounds for the number fields generated by series coefficients.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::primes::factor;
use crate::arith::{LogReal, Rational};
use crate::field::{height_algnum, NumberField};
use crate::poly::{discriminant_w, height_poly, BiPoly};
use crate::puiseux::{ord_z_of_series_composition, BranchSet, OrdZ, PuiseuxSeries};
use crate::{AlgNum, Error, Result};

/// `λ_k = [L : Q(a_start, …, a_{k−1})]` for `k = start, start + 1, …`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaChain {
    pub start: i64,
    /// `λ_start, λ_{start+1}, …`; every later value is `1`.
    pub degrees: Vec<usize>,
    /// `ν = [L : Q]`.
    pub field_degree: usize,
    /// Index up to which the chain is known to be final.
    pub resolved_up_to: i64,
}

impl LambdaChain {
    pub fn lambda(&self, k: i64) -> usize {
        if k < self.start {
            return self.field_degree;
        }
        self.degrees.get((k - self.start) as usize).copied().unwrap_or(1)
    }

    /// `Σ_k (k/e)(λ_k − λ_{k+1})`.
    pub fn weighted_drop(&self, e: u32) -> Rational {
        let mut s = Rational::zero();
        for (i, w) in self.degrees.windows(2).enumerate() {
            let k = self.start + i as i64;
            s += Rational::new((k * (w[0] as i64 - w[1] as i64)).into(), (e as i64).into());
        }
        if let Some(&last) = self.degrees.last() {
            let k = self.start + self.degrees.len() as i64 - 1;
            s += Rational::new((k * (last as i64 - 1)).into(), (e as i64).into());
        }
        s
    }
}

/// The field `L` generated by a branch is generated by its coefficients up to the last
/// one introduced by a characteristic equation; every later coefficient lies in it.
fn generators(branch: &PuiseuxSeries) -> Vec<AlgNum> {
    branch
        .indexed()
        .filter(|(k, c)| *k <= branch.generators_until.max(branch.kappa) && !c.is_zero())
        .map(|(_, c)| c.clone())
        .collect()
}

/// Degrees `[L : Λ_k]` along the branch, with `Λ_k` generated by the coefficients before `k`.
pub fn lambda_chain(branch: &PuiseuxSeries) -> LambdaChain {
    let field = &branch.field;
    let gens = generators(branch);
    let nu = field.subfield_degree(&gens);
    let start = branch.kappa.min(0);
    let mut degrees = vec![nu];
    let mut seen: Vec<AlgNum> = Vec::new();
    let last = branch.generators_until.max(branch.kappa);
    let mut k = start;
    while *degrees.last().expect("non-empty") > 1 && k <= last {
        let c = branch.coeff(k);
        if !c.is_zero() && !field.is_rational_field() {
            seen.push(c);
        }
        let sub = if seen.is_empty() { 1 } else { field.subfield_degree(&seen) };
        degrees.push(nu / sub);
        k += 1;
    }
    LambdaChain { start, degrees, field_degree: nu, resolved_up_to: branch.truncation }
}

/// Both sides of `Σ_k (k/e)(λ_k − λ_{k+1}) ≤ ord_z P′_w(z, f(z))`.
#[derive(Clone, Debug, Serialize)]
pub struct LsumCheck {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

/// Evaluates the chain inequality exactly. Requires a branch without negative part and
/// `p_n(0) ≠ 0`; an undetermined order is reported as [`Error::Unresolved`].
pub fn check_lsum(branch: &PuiseuxSeries, chain: &LambdaChain, p: &BiPoly) -> Result<LsumCheck> {
    if branch.kappa < 0 {
        return Err(Error::Precondition("the chain inequality needs a branch without negative part".into()));
    }
    if p.lead_w().coeff(0).is_zero() {
        return Err(Error::Precondition("the chain inequality needs p_n(0) ≠ 0".into()));
    }
    let rhs = match ord_z_of_series_composition(&p.derivative_w(), branch) {
        OrdZ::Exact { value } => value,
        OrdZ::Infinite => return Err(Error::Internal("P′_w vanishes on a branch of a separable P".into())),
        OrdZ::Unresolved { truncation } => {
            return Err(Error::Unresolved { what: "ord_z P′_w(z, f(z))".into(), truncation });
        }
    };
    let lhs = chain.weighted_drop(branch.e);
    Ok(LsumCheck { holds: lhs <= rhs, lhs, rhs })
}

/// Which discriminant estimate is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscFormula {
    /// Orders of vanishing; needs `p_n(0) ≠ 0`. Carries the `log ν` term (`n log n` for the
    /// sum) left over from the generator bound, which the estimate cannot drop when the
    /// order of vanishing is zero.
    Integral,
    /// `ord_z D ≤ 2m(n − 1)` substituted; needs `p_n(0) ≠ 0`.
    Friendly,
    /// No condition on `p_n(0)`.
    General,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchDisc {
    pub e: u32,
    pub kappa: i64,
    /// `ν = [L : Q]`.
    pub nu: usize,
    pub bound: LogReal,
    /// `ord_z P′_w(z, f(z))`, when the formula uses it.
    #[serde(serialize_with = "ser_opt_rational")]
    pub ord_derivative: Option<Rational>,
    /// `∂_L` when `ν ≤ 2`.
    pub actual: Option<LogReal>,
    pub actual_within_bound: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantReport {
    pub formula_used: DiscFormula,
    pub branches: Vec<BranchDisc>,
    pub bound_sum: LogReal,
    /// `Σ_i ∂_{L_i}` over all `n` series, when every branch is realized, unramified and of
    /// degree at most 2.
    pub actual_sum: Option<LogReal>,
    pub ord_d: usize,
    /// `E = max e_i`; an upper bound when some branches are unrealized.
    pub e_max: u32,
    pub m: u32,
    pub n: u32,
    pub height_p: LogReal,
    pub complete: bool,
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn c(x: i64) -> LogReal {
    LogReal::constant(&int(x))
}

/// Evaluates the chosen bound for every realized branch and for the sum over all series.
pub fn discriminant_bound(p: &BiPoly, branches: &BranchSet, formula: DiscFormula) -> Result<DiscriminantReport> {
    let (m, n) = (p.deg_z(), p.deg_w());
    if m == 0 || n == 0 {
        return Err(Error::Precondition(format!("need m, n ≥ 1 (got m = {m}, n = {n})")));
    }
    let integral = !p.lead_w().coeff(0).is_zero();
    if !integral && formula != DiscFormula::General {
        return Err(Error::Precondition(
            "p_n(0) = 0: the integral estimates do not apply; use the general formula".into(),
        ));
    }
    let h = height_poly(p)?;
    let d = discriminant_w(p)?;
    let (ord_d, _) = d.lowest_term()?;
    let e_max = branches.max_ramification();
    let (mi, ni) = (m as i64, n as i64);
    let log_mn = LogReal::log_of_int(m as u64 * n as u64);
    let log_m = LogReal::log_of_int(m as u64);
    // h + log(mn) + 3E  or  h + 5n + log m
    let inner = |e: u32| match formula {
        DiscFormula::General => h.add(&c(5 * ni)).add(&log_m),
        _ => h.add(&log_mn).add(&c(3 * e as i64)),
    };
    let friendly = inner(e_max).scale_int(16 * mi * ni * (ni - 1));
    let bound_sum = match formula {
        DiscFormula::Integral => h
            .add(&LogReal::log_of_int(n as u64 + 1))
            .scale_int(2 * (ni - 1))
            .add(&inner(e_max).scale_int((8 * ni - 1) * ord_d as i64))
            .add(&LogReal::log_of_int(n as u64).scale_int(ni)),
        DiscFormula::Friendly => friendly.clone(),
        DiscFormula::General => h
            .add(&c(4 * ni))
            .scale_int(2 * (ni - 1))
            .add(&inner(e_max).scale_int((8 * ni - 1) * ord_d as i64)),
    };
    let mut rows = Vec::new();
    for b in &branches.branches {
        let chain = lambda_chain(b);
        let nu = chain.field_degree;
        let nu_q = int(nu as i64);
        let (bound, ord_derivative) = match formula {
            DiscFormula::Integral => {
                let a0 = b.coeff(0);
                let ord = match ord_z_of_series_composition(&p.derivative_w(), b) {
                    OrdZ::Exact { value } => value,
                    OrdZ::Unresolved { truncation } => {
                        return Err(Error::Unresolved { what: "ord_z P′_w(z, f(z))".into(), truncation });
                    }
                    OrdZ::Infinite => return Err(Error::Internal("P′_w vanishes on a branch".into())),
                };
                let bound = height_algnum(&b.field, &a0)?
                    .scale_int(2 * (nu as i64 - 1))
                    .add(&inner(b.e).scale(&(&ord * int(8 * ni - 1))))
                    .add(&LogReal::log_of_int(nu as u64));
                (bound, Some(ord))
            }
            DiscFormula::Friendly => (friendly.scale(&nu_q.recip()), None),
            DiscFormula::General => (
                inner(e_max).scale_int(16 * mi * ni * (ni - 1)).scale(&(int(2) / &nu_q)),
                None,
            ),
        };
        let actual = branch_field_discriminant(b)?;
        let actual_within_bound = actual.as_ref().map(|a| a.compare_le(&bound).holds);
        rows.push(BranchDisc { e: b.e, kappa: b.kappa, nu, bound, ord_derivative, actual, actual_within_bound });
    }
    let all_known = branches.complete && rows.iter().all(|r| r.actual.is_some() && r.e == 1);
    let actual_sum = all_known.then(|| {
        rows.iter().fold(LogReal::zero(), |acc, r| acc.add(r.actual.as_ref().expect("known")))
    });
    Ok(DiscriminantReport {
        formula_used: formula,
        branches: rows,
        bound_sum,
        actual_sum,
        ord_d,
        e_max,
        m,
        n,
        height_p: h,
        complete: branches.complete,
    })
}

/// `∂_L` for the field generated by the branch coefficients, when `[L : Q] ≤ 2`.
pub fn branch_field_discriminant(branch: &PuiseuxSeries) -> Result<Option<LogReal>> {
    let gens = generators(branch);
    let field = &branch.field;
    let nu = field.subfield_degree(&gens);
    match nu {
        1 => Ok(Some(LogReal::zero())),
        2 => {
            let g = gens.iter().find(|g| g.as_rational().is_none()).expect("an irrational generator");
            let mp = field.min_poly(g)?;
            let disc = &mp.coeff(1) * &mp.coeff(1) - Rational::from_integer(4.into()) * mp.coeff(0) * mp.coeff(2);
            Ok(Some(quadratic_partial_discriminant(&disc)))
        }
        _ => Ok(None),
    }
}

/// Squarefree integer `d` with `Q(√q) = Q(√d)`.
fn squarefree_kernel(q: &Rational) -> BigInt {
    let n = q.numer() * q.denom();
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut d = BigUint::one();
    for (p, e) in factor(n.magnitude()) {
        if e % 2 == 1 {
            d *= p;
        }
    }
    sign * BigInt::from(d)
}

fn quadratic_partial_discriminant(disc: &Rational) -> LogReal {
    let d = squarefree_kernel(disc);
    let field_disc = if d.mod_floor(&BigInt::from(4)) == BigInt::one() { d } else { d * 4 };
    LogReal::log_of(&Rational::from_integer(field_disc.abs())).scale(&Rational::new(1.into(), 2.into()))
}

/// `∂_F = log |disc F| / [F : Q]` for fields of degree at most 2.
pub fn actual_partial_discriminant(field: &NumberField) -> Result<LogReal> {
    match field.degree() {
        1 => Ok(LogReal::zero()),
        2 => Ok(quadratic_partial_discriminant(&Rational::from_integer(field.discriminant().clone()))),
        d => Err(Error::Unsupported(format!("field discriminants are computed for degree ≤ 2 only (got {d})"))),
    }
}

/// `2(ν − 1) ĥ(a) + log ν`, with `ν` the degree of `a`, an upper bound for `∂_{Q(a)}`.
pub fn silverman_bound(field: &NumberField, a: &AlgNum) -> Result<LogReal> {
    let nu = field.min_poly(a)?.deg() as i64;
    Ok(height_algnum(field, a)?.scale_int(2 * (nu - 1)).add(&LogReal::log_of_int(nu as u64)))
}
