use serde::Serialize;

use super::divisor::projective_height;
use crate::arith::primes::{prime_divisors, primes_up_to};
use crate::arith::{ln_bigint, real_to_f64, LogReal, Place, Prime, Rational, DEFAULT_PRECISION};
use crate::field::conjugate_norm_max;
use crate::poly::BiPoly;
use crate::puiseux::BranchSet;
use crate::{Error, Result};

/// The exceptional places seen in truncated branches, against the a priori bound on `h(S)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalReport {
    /// `3n(h(P) + log(mn) + 1)`.
    pub bound: LogReal,
    /// Primes `p` with `|a_{ik}|_p > 1` for some stored coefficient and some extension.
    pub observed: Vec<Prime>,
    /// `Σ_{p ∈ observed} log p`.
    pub observed_height: LogReal,
    pub holds: bool,
    /// The observed set only covers the stored coefficients of the realized branches, so it
    /// can grow with the truncation.
    pub truncation: i64,
    pub complete: bool,
}

/// Collects the observed exceptional set of `branches` and compares its height with the bound.
pub fn exceptional_set_bound(p: &BiPoly, branches: &BranchSet) -> Result<ExceptionalReport> {
    let (m, n) = (p.deg_z(), p.deg_w());
    if m == 0 || n == 0 {
        return Err(Error::Precondition(format!("need m, n ≥ 1 (got m = {m}, n = {n})")));
    }
    let h = projective_height(p)?;
    let inner = h
        .add(&LogReal::log_of_int(m as u64 * n as u64))
        .add(&LogReal::constant(&Rational::from_integer(1.into())));
    let bound = inner.scale_int(3 * n as i64);
    let mut observed: Vec<Prime> = Vec::new();
    for b in &branches.branches {
        let mut candidates: Vec<Prime> = Vec::new();
        for c in b.coeffs.iter().filter(|c| !c.is_zero()) {
            for q in prime_divisors(c.denominator().magnitude()) {
                if !candidates.contains(&q) && !observed.contains(&q) {
                    candidates.push(q);
                }
            }
        }
        for q in candidates {
            let place = Place::Finite(q.clone());
            for c in b.coeffs.iter().filter(|c| !c.is_zero()) {
                let norm = conjugate_norm_max(&b.field, c, &place)?;
                if !norm.compare_le(&LogReal::zero()).holds {
                    observed.push(q);
                    break;
                }
            }
        }
    }
    observed.sort();
    let observed_height = observed
        .iter()
        .fold(LogReal::zero(), |acc, q| acc.add(&LogReal::log_of(&Rational::from_integer(q.as_biguint().clone().into()))));
    let holds = observed_height.compare_le(&bound).holds;
    let truncation = branches.branches.iter().map(|b| b.truncation).min().unwrap_or(0);
    Ok(ExceptionalReport { bound, observed, observed_height, holds, truncation, complete: branches.complete })
}

/// `Σ_{p ≤ n} log c(p, n) = π(n) log n + Σ_{p ≤ n} log p` for every `n ≤ n_max`, compared with `2.3n`.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeSumReport {
    pub n_max: u64,
    /// Every `n` in `1..=n_max` satisfies the bound (within the evaluation tolerance).
    pub holds: bool,
    pub violations: Vec<u64>,
    /// Largest value of `sum / n` and where it occurs.
    pub max_ratio: f64,
    pub argmax: u64,
    /// Absolute error bound of every evaluated sum.
    pub tolerance: f64,
}

/// Evaluates `Σ_{p ≤ n} log(np)` for `n ≤ n_max` from logarithms of primes computed once at
/// 128 bits; the accumulated rounding error is tracked and used in every comparison.
pub fn prime_sum_check(n_max: u64) -> PrimeSumReport {
    let primes = primes_up_to(n_max);
    let prec = DEFAULT_PRECISION;
    let ulp = 2f64.powi(-(prec as i32) + 8);
    let mut theta = crate::arith::real_from_f64(0.0, prec);
    let mut next = 0usize;
    let mut count = 0u64;
    let mut violations = Vec::new();
    let mut max_ratio = 0.0f64;
    let mut argmax = 1;
    let mut tolerance = 0.0f64;
    for n in 1..=n_max {
        while next < primes.len() && primes[next] <= n {
            theta = &theta + &ln_bigint(&primes[next].into(), prec);
            count += 1;
            next += 1;
        }
        if count == 0 {
            continue;
        }
        let sum = &theta + &(ln_bigint(&n.into(), prec) * crate::arith::real_from_f64(count as f64, prec));
        let tol = (count as f64 + 2.0) * ulp * (1.0 + real_to_f64(&sum).abs());
        tolerance = tolerance.max(tol);
        let value = real_to_f64(&sum);
        let limit = 2.3 * n as f64;
        if value > limit + tol {
            violations.push(n);
        }
        let ratio = value / n as f64;
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = n;
        }
    }
    PrimeSumReport { n_max, holds: violations.is_empty(), violations, max_ratio, argmax, tolerance }
}
