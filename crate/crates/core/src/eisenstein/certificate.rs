use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::divisor::{a_prime_height_bound, build_divisors, projective_height, theorem_height_bound};
use super::{DivisorMode, MDivisor, Variant};
use crate::arith::primes::prime_divisors;
use crate::arith::{Comparison, LogReal, Place, Prime, Rational};
use crate::field::conjugate_norms;
use crate::poly::BiPoly;
use crate::puiseux::PuiseuxSeries;
use crate::{Error, NormalizationRecord, Result};

/// Outcome of checking `|a_k|_v ≤ (bound)_v` for every stored coefficient.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checked_places: Vec<Place>,
    pub max_k: i64,
    pub checks: usize,
    pub failures: Vec<Failure>,
    /// Smallest `rhs − lhs` seen; `None` when no non-zero coefficient was checked.
    pub slack_min: Option<LogReal>,
    /// `(place, k)` where the inequality holds with equality, decided exactly.
    pub tight: Vec<(Place, i64)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub place: Place,
    pub k: i64,
    pub lhs: LogReal,
    pub rhs: LogReal,
}

/// Outcome of testing the sharper exponent `(k − κ)/e` in place of `k/e − ⌊κ/e⌋`.
/// It is reported only; a violation says nothing about correctness.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ConjecturalReport {
    pub checks: usize,
    pub violations: Vec<(Place, i64)>,
}

/// Divisors bounding the coefficients of one branch, with the height inequalities checked.
#[derive(Clone, Debug)]
pub struct EisensteinCertificate {
    pub variant: Variant,
    pub mode: DivisorMode,
    pub e: u32,
    pub kappa: i64,
    pub m: u32,
    pub n: u32,
    pub normalization: NormalizationRecord,
    pub normalized: BiPoly,
    pub divisor_a: MDivisor,
    /// Empty for the initial-coefficient variants, whose `A′_v` is `max{1, |a_·|_v}`.
    pub divisor_a_prime: MDivisor,
    pub height_p: LogReal,
    pub height_a: LogReal,
    pub height_a_prime: LogReal,
    pub theorem_bound: LogReal,
    pub a_prime_bound: LogReal,
    pub height_check: Comparison,
    pub a_prime_check: Comparison,
    /// Leading term `(2n − 1) h(P)` of the older, non-constructive estimate.
    pub classical_leading_term: LogReal,
    pub verification: Option<VerificationReport>,
    pub conjectural: Option<ConjecturalReport>,
}

impl EisensteinCertificate {
    /// Both height inequalities hold and, if a branch was checked, so did every coefficient.
    pub fn holds(&self) -> bool {
        self.height_check.holds
            && self.a_prime_check.holds
            && self.verification.as_ref().is_none_or(|v| v.passed())
    }

    /// `⌊κ/e⌋` for the general variants, `0` for the regular ones.
    pub fn shift(&self) -> i64 {
        if self.variant.is_regular() {
            0
        } else {
            self.kappa.div_euclid(self.e as i64)
        }
    }

    /// Index of the coefficient whose norm replaces `A′` in the initial-coefficient variants.
    pub fn initial_index(&self) -> i64 {
        self.shift() * self.e as i64
    }
}

/// Builds the divisors `A′`, `A` for branches of `P` with ramification `e` and initial index
/// `κ`, and checks `h(A) ≤ bound(variant)` and `h(A′) ≤ h(P) + log 3`.
pub fn global_divisor(p: &BiPoly, e: u32, kappa: i64, variant: Variant, mode: DivisorMode) -> Result<EisensteinCertificate> {
    let pair = build_divisors(p, e, kappa, variant, mode)?;
    let (m, n) = (p.deg_z(), p.deg_w());
    let height_p = projective_height(p)?;
    let theorem_bound = theorem_height_bound(m, n, e, variant, &height_p)?;
    let a_prime_bound = a_prime_height_bound(&height_p);
    let height_a = pair.a.height();
    let height_a_prime = pair.a_prime.height();
    let height_check = height_a.compare_le(&theorem_bound);
    let a_prime_check = height_a_prime.compare_le(&a_prime_bound);
    if !pair.a.is_effective() || !pair.a_prime.is_effective() {
        return Err(Error::Internal("constructed divisor is not effective".into()));
    }
    Ok(EisensteinCertificate {
        variant,
        mode,
        e,
        kappa,
        m,
        n,
        normalization: pair.normalization,
        normalized: pair.normalized,
        divisor_a: pair.a,
        divisor_a_prime: pair.a_prime,
        classical_leading_term: height_p.scale_int(2 * n as i64 - 1),
        height_p,
        height_a,
        height_a_prime,
        theorem_bound,
        a_prime_bound,
        height_check,
        a_prime_check,
        verification: None,
        conjectural: None,
    })
}

/// Norms `log max|a_k|_v` of every stored coefficient at every place, one row per index.
struct NormTable {
    places: Vec<Place>,
    rows: Vec<(i64, Vec<LogReal>)>,
}

fn denominator_primes(branch: &PuiseuxSeries) -> Vec<Prime> {
    let den = branch.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator()));
    prime_divisors(den.magnitude())
}

fn norm_table(cert: &EisensteinCertificate, branch: &PuiseuxSeries) -> Result<NormTable> {
    let mut places: Vec<Place> = cert.divisor_a.support().cloned().collect();
    places.extend(denominator_primes(branch).into_iter().map(Place::Finite));
    places.sort();
    places.dedup();
    let indexed: Vec<(i64, &crate::AlgNum)> = branch.indexed().filter(|(_, c)| !c.is_zero()).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = indexed.len().div_ceil(threads).max(1);
    let field = &branch.field;
    let places_ref = &places;
    let rows: Result<Vec<Vec<(i64, Vec<LogReal>)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = indexed
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|(k, c)| Ok((*k, conjugate_norms(field, c, places_ref)?)))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(NormTable { places, rows: rows?.into_iter().flatten().collect() })
}

fn check_branch_shape(cert: &EisensteinCertificate, branch: &PuiseuxSeries) -> Result<()> {
    if branch.is_zero() {
        return Ok(());
    }
    if branch.e != cert.e || branch.kappa != cert.kappa {
        return Err(Error::Precondition(format!(
            "certificate is for (e, κ) = ({}, {}) but the branch has ({}, {})",
            cert.e, cert.kappa, branch.e, branch.kappa
        )));
    }
    Ok(())
}

/// Checks the coefficient bound of the certificate's variant for every stored coefficient of
/// `branch` at every place of the divisor support and every prime dividing a coefficient
/// denominator (elsewhere both sides are trivially `≤ 1` and `≥ 1`).
pub fn verify_bounds(cert: &EisensteinCertificate, branch: &PuiseuxSeries) -> Result<VerificationReport> {
    check_branch_shape(cert, branch)?;
    let table = norm_table(cert, branch)?;
    let shift = cert.shift();
    let e = Rational::from_integer((cert.e as i64).into());
    let initial = branch.coeff(cert.initial_index());
    let initial_norms = conjugate_norms(&branch.field, &initial, &table.places)?;
    let mut report = VerificationReport {
        checked_places: table.places.clone(),
        max_k: branch.truncation,
        ..Default::default()
    };
    for (pi, v) in table.places.iter().enumerate() {
        let base = if cert.variant.is_a0() {
            initial_norms[pi].log_plus()
        } else {
            cert.divisor_a_prime.get(v)
        };
        let log_a = cert.divisor_a.get(v);
        for (k, norms) in &table.rows {
            let exponent = Rational::from_integer((*k).into()) / &e - Rational::from_integer(shift.into());
            let rhs = base.add(&log_a.scale(&exponent));
            let lhs = &norms[pi];
            let cmp = lhs.compare_le(&rhs);
            report.checks += 1;
            if !cmp.holds {
                report.failures.push(Failure { place: v.clone(), k: *k, lhs: lhs.clone(), rhs });
                continue;
            }
            if let Some(s) = cmp.slack {
                if cmp.exact && s.exact_eq(&LogReal::zero()) {
                    report.tight.push((v.clone(), *k));
                }
                report.slack_min = Some(match report.slack_min.take() {
                    None => s,
                    Some(cur) => cur.min(&s),
                });
            }
        }
    }
    Ok(report)
}

/// Tests `|a_k|_v ≤ A′_v A_v^{(k − κ)/e}` (never asserted; see [`ConjecturalReport`]).
pub fn verify_conjectural(cert: &EisensteinCertificate, branch: &PuiseuxSeries) -> Result<ConjecturalReport> {
    check_branch_shape(cert, branch)?;
    if cert.variant.is_a0() {
        return Err(Error::Unsupported("the sharper exponent is stated for A′-type bounds only".into()));
    }
    let table = norm_table(cert, branch)?;
    let e = Rational::from_integer((cert.e as i64).into());
    let mut out = ConjecturalReport::default();
    for (pi, v) in table.places.iter().enumerate() {
        let base = cert.divisor_a_prime.get(v);
        let log_a = cert.divisor_a.get(v);
        for (k, norms) in &table.rows {
            let exponent = Rational::from_integer((*k - cert.kappa).into()) / &e;
            out.checks += 1;
            if !norms[pi].compare_le(&base.add(&log_a.scale(&exponent))).holds {
                out.violations.push((v.clone(), *k));
            }
        }
    }
    Ok(out)
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 6)?;
        st.serialize_field("checked_places", &self.checked_places)?;
        st.serialize_field("max_k", &self.max_k)?;
        st.serialize_field("checks", &self.checks)?;
        st.serialize_field("failures", &self.failures)?;
        st.serialize_field("slack_min", &self.slack_min)?;
        let tight: Vec<TightEntry> = self.tight.iter().map(|(place, k)| TightEntry { place, k: *k }).collect();
        st.serialize_field("tight", &tight)?;
        st.end()
    }
}

#[derive(Serialize)]
struct TightEntry<'a> {
    place: &'a Place,
    k: i64,
}

struct DivisorRows<'a>(&'a EisensteinCertificate);

impl Serialize for DivisorRows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let cert = self.0;
        let places: Vec<&Place> = cert.divisor_a.support().collect();
        let mut seq = s.serialize_seq(Some(places.len()))?;
        for v in places {
            seq.serialize_element(&DivisorRow {
                place: v,
                log_a: cert.divisor_a.get(v),
                log_a_prime: if cert.variant.is_a0() { None } else { Some(cert.divisor_a_prime.get(v)) },
            })?;
        }
        seq.end()
    }
}

#[derive(Serialize)]
struct DivisorRow<'a> {
    place: &'a Place,
    #[serde(rename = "logA")]
    log_a: LogReal,
    #[serde(rename = "logAprime")]
    log_a_prime: Option<LogReal>,
}

struct Heights<'a>(&'a EisensteinCertificate);

impl Serialize for Heights<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("h_P", &self.0.height_p)?;
        map.serialize_entry("h_A", &self.0.height_a)?;
        map.serialize_entry("h_Aprime", &self.0.height_a_prime)?;
        map.end()
    }
}

#[derive(Serialize)]
struct CheckView<'a> {
    holds: bool,
    exact: bool,
    slack: &'a Option<LogReal>,
}

impl<'a> From<&'a Comparison> for CheckView<'a> {
    fn from(c: &'a Comparison) -> Self {
        CheckView { holds: c.holds, exact: c.exact, slack: &c.slack }
    }
}

impl Serialize for EisensteinCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EisensteinCertificate", 16)?;
        st.serialize_field("variant", &self.variant)?;
        st.serialize_field("divisor_mode", &self.mode)?;
        st.serialize_field("e", &self.e)?;
        st.serialize_field("kappa", &self.kappa)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("normalization", &self.normalization)?;
        st.serialize_field("normalized_polynomial", &self.normalized.to_string())?;
        st.serialize_field("divisor", &DivisorRows(self))?;
        st.serialize_field("heights", &Heights(self))?;
        st.serialize_field("theorem_bound", &self.theorem_bound)?;
        st.serialize_field("height_check", &CheckView::from(&self.height_check))?;
        st.serialize_field("a_prime_bound", &self.a_prime_bound)?;
        st.serialize_field("a_prime_check", &CheckView::from(&self.a_prime_check))?;
        st.serialize_field("classical_leading_term", &self.classical_leading_term)?;
        st.serialize_field("verification", &self.verification)?;
        st.serialize_field("conjectural", &self.conjectural)?;
        st.end()
    }
}
