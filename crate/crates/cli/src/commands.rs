use std::fmt::Write;

use eisenkit::disc::{check_lsum, discriminant_bound, lambda_chain, DiscFormula, DiscriminantReport, LsumCheck};
use eisenkit::eisenstein::{
    exceptional_set_bound, global_divisor, prime_sum_check, verify_bounds, verify_conjectural, EisensteinCertificate,
};
use eisenkit::lemmas::{check_polynomial, LemmaReport};
use eisenkit::puiseux::puiseux_branches;
use eisenkit::arith::primes::primes_up_to;
use eisenkit::{BranchSet, Error, LogReal, Prime, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::job::{DiscArg, Prepared, Settings};

/// Result of one command on one job.
pub struct Outcome {
    pub violation: bool,
    pub json: Value,
    pub text: String,
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn num(x: &LogReal) -> String {
    match x {
        LogReal::NegInfinity => "-inf".into(),
        _ => format!("{:.6}", x.to_f64()),
    }
}

pub fn field_name(prep: &Prepared) -> String {
    if prep.field.is_rational_field() {
        "Q".into()
    } else {
        format!("Q[x]/({})", prep.field.modulus().display_in("x"))
    }
}

fn branches(prep: &Prepared, settings: &Settings) -> Result<BranchSet, Error> {
    puiseux_branches(&prep.p, prep.field.clone(), settings.terms as i64)
}

fn write_branches(out: &mut String, bs: &BranchSet) {
    for (i, b) in bs.branches.iter().enumerate() {
        let status = if b.exact { "exact" } else { "truncated" };
        let _ = writeln!(out, "branch {}: e = {}, kappa = {}, {status} at K = {}", i + 1, b.e, b.kappa, b.truncation);
        let _ = writeln!(out, "  {}", b.display_terms(8));
    }
    for u in &bs.unrealized {
        let _ = writeln!(
            out,
            "unrealized: {} root(s) at exponent {}, ramification in [{}, {}], characteristic polynomial {}",
            u.root_count, u.exponent, u.ramification, u.ramification_bound, u.char_poly
        );
    }
    let _ = writeln!(out, "complete: {}", if bs.complete { "yes" } else { "no" });
}

pub fn expand(prep: &Prepared, settings: &Settings) -> Result<Outcome, Error> {
    let bs = branches(prep, settings)?;
    let mut text = String::new();
    write_branches(&mut text, &bs);
    Ok(Outcome { violation: false, json: json!({ "branches": to_json(&bs) }), text })
}

/// `(e, κ)` pairs to certify: every realized branch, and every unrealized group whose
/// ramification and initial exponent are already determined.
fn shapes(bs: &BranchSet) -> Vec<(u32, i64)> {
    let mut out: Vec<(u32, i64)> = bs.branches.iter().map(|b| (b.e, b.kappa)).collect();
    for u in &bs.unrealized {
        let kappa = &u.exponent * Rational::from_integer(u.ramification.into());
        if u.ramification == u.ramification_bound && kappa.is_integer() {
            out.push((u.ramification, kappa.to_integer().try_into().unwrap_or(i64::MAX)));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn write_certificate(out: &mut String, cert: &EisensteinCertificate) {
    let _ = writeln!(out, "certificate: variant {}, e = {}, kappa = {}", cert.variant, cert.e, cert.kappa);
    let _ = writeln!(out, "  {:<8} {:>14} {:>14}", "place", "log A'", "log A");
    for (v, a) in cert.divisor_a.iter() {
        let ap = if cert.variant.is_a0() { "-".to_string() } else { num(&cert.divisor_a_prime.get(v)) };
        let _ = writeln!(out, "  {:<8} {:>14} {:>14}", v.to_string(), ap, num(a));
    }
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "  h(A) = {} <= {} (slack {}) {}",
        num(&cert.height_a),
        num(&cert.theorem_bound),
        cert.height_check.slack.as_ref().map(num).unwrap_or_else(|| "inf".into()),
        verdict(cert.height_check.holds)
    );
    if !cert.variant.is_a0() {
        let _ = writeln!(
            out,
            "  h(A') = {} <= {} {}",
            num(&cert.height_a_prime),
            num(&cert.a_prime_bound),
            verdict(cert.a_prime_check.holds)
        );
    }
    let _ = writeln!(out, "  for comparison, (2n-1) h(P) = {}", num(&cert.classical_leading_term));
}

pub fn bounds(prep: &Prepared, settings: &Settings) -> Result<Outcome, Error> {
    let bs = branches(prep, settings)?;
    let mut certs = Vec::new();
    let mut text = String::new();
    for (e, kappa) in shapes(&bs) {
        let variant = settings.variant.resolve(e, kappa);
        let cert = global_divisor(&prep.p, e, kappa, variant, settings.divisor_mode.into())?;
        write_certificate(&mut text, &cert);
        certs.push(cert);
    }
    let violation = certs.iter().any(|c| !c.holds());
    Ok(Outcome { violation, json: json!({ "certificates": to_json(&certs) }), text })
}

pub fn verify(prep: &Prepared, settings: &Settings) -> Result<Outcome, Error> {
    let bs = branches(prep, settings)?;
    let mut certs = Vec::new();
    let mut text = String::new();
    for (i, b) in bs.branches.iter().enumerate() {
        let variant = settings.variant.resolve(b.e, b.kappa);
        let mut cert = global_divisor(&prep.p, b.e, b.kappa, variant, settings.divisor_mode.into())?;
        let report = verify_bounds(&cert, b)?;
        if !variant.is_a0() && !variant.is_regular() {
            cert.conjectural = Some(verify_conjectural(&cert, b)?);
        }
        let _ = writeln!(text, "branch {}: {}", i + 1, b.display_terms(6));
        write_certificate(&mut text, &cert);
        let places: Vec<String> = report.checked_places.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            text,
            "  verification: {} checks up to k = {} at places {{{}}}, {} failures, min slack {}",
            report.checks,
            report.max_k,
            places.join(", "),
            report.failures.len(),
            report.slack_min.as_ref().map(num).unwrap_or_else(|| "none".into())
        );
        for f in &report.failures {
            let _ = writeln!(text, "  FAILURE at {} k = {}: {} > {}", f.place, f.k, num(&f.lhs), num(&f.rhs));
        }
        if let Some(c) = &cert.conjectural {
            let _ = writeln!(text, "  sharper exponent (k - kappa)/e: {} checks, {} violations", c.checks, c.violations.len());
        }
        cert.verification = Some(report);
        certs.push(cert);
    }
    if !bs.unrealized.is_empty() {
        let _ = writeln!(text, "{} root(s) not realized over the field; declare a larger field to verify them", bs.unrealized.iter().map(|u| u.root_count).sum::<usize>());
    }
    let violation = certs.iter().any(|c| !c.holds());
    Ok(Outcome { violation, json: json!({ "certificates": to_json(&certs), "complete": bs.complete }), text })
}

pub fn exceptional(prep: &Prepared, settings: &Settings) -> Result<Outcome, Error> {
    let bs = branches(prep, settings)?;
    let r = exceptional_set_bound(&prep.p, &bs)?;
    let ps = prime_sum_check(settings.prime_bound);
    let mut text = String::new();
    let observed: Vec<String> = r.observed.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(text, "observed exceptional primes at K = {}: {{{}}}", r.truncation, observed.join(", "));
    let _ = writeln!(
        text,
        "h(S) = {} <= 3n(h(P) + log(mn) + 1) = {} {}",
        num(&r.observed_height),
        num(&r.bound),
        if r.holds { "PASS" } else { "FAIL" }
    );
    if !r.complete {
        let _ = writeln!(text, "some roots are not realized over the field; their coefficients were not examined");
    }
    let _ = writeln!(
        text,
        "prime sum: sum over p <= n of log c(p, n) <= 2.3n for n <= {}: {} (max ratio {:.4} at n = {})",
        ps.n_max,
        if ps.holds { "PASS" } else { "FAIL" },
        ps.max_ratio,
        ps.argmax
    );
    Ok(Outcome {
        violation: !r.holds || !ps.holds,
        json: json!({ "exceptional": to_json(&r), "prime_sum": to_json(&ps) }),
        text,
    })
}

#[derive(Serialize)]
struct ChainRow {
    branch: usize,
    degrees: Vec<usize>,
    start: i64,
    check: Option<LsumCheck>,
}

pub fn disc(prep: &Prepared, settings: &Settings) -> Result<Outcome, Error> {
    let bs = branches(prep, settings)?;
    let integral = prep.p.lead_w().ord() == Some(0);
    let formula = match settings.disc_formula {
        DiscArg::Auto if integral => DiscFormula::Friendly,
        DiscArg::Auto => DiscFormula::General,
        DiscArg::Integral => DiscFormula::Integral,
        DiscArg::Friendly => DiscFormula::Friendly,
        DiscArg::General => DiscFormula::General,
    };
    let report: DiscriminantReport = discriminant_bound(&prep.p, &bs, formula)?;
    let mut chains = Vec::new();
    for (i, b) in bs.branches.iter().enumerate() {
        let chain = lambda_chain(b);
        let check = if integral && b.kappa >= 0 { Some(check_lsum(b, &chain, &prep.p)?) } else { None };
        chains.push(ChainRow { branch: i + 1, degrees: chain.degrees.clone(), start: chain.start, check });
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "formula: {}, ord_z D = {}, E = {}, h(P) = {}",
        format!("{formula:?}").to_lowercase(),
        report.ord_d,
        report.e_max,
        num(&report.height_p)
    );
    for (row, chain) in report.branches.iter().zip(&chains) {
        let actual = row.actual.as_ref().map(num).unwrap_or_else(|| "n/a".into());
        let _ = writeln!(
            text,
            "branch {}: e = {}, kappa = {}, nu = {}, actual = {actual} <= bound = {}{}",
            chain.branch,
            row.e,
            row.kappa,
            row.nu,
            num(&row.bound),
            match row.actual_within_bound {
                Some(true) => " PASS",
                Some(false) => " FAIL",
                None => "",
            }
        );
        if let Some(c) = &chain.check {
            let _ = writeln!(
                text,
                "  lambda = {:?}, sum k/e (lambda_k - lambda_(k+1)) = {} <= ord_z P'_w(z, f) = {} {}",
                chain.degrees,
                c.lhs,
                c.rhs,
                if c.holds { "PASS" } else { "FAIL" }
            );
        }
    }
    if !bs.unrealized.is_empty() {
        let roots: usize = bs.unrealized.iter().map(|u| u.root_count).sum();
        let _ = writeln!(text, "{roots} root(s) not realized over the field; E is an upper bound");
    }
    let _ = writeln!(
        text,
        "sum bound = {}{}",
        num(&report.bound_sum),
        report.actual_sum.as_ref().map(|a| format!(", actual sum = {}", num(a))).unwrap_or_default()
    );
    let violation = report.branches.iter().any(|r| r.actual_within_bound == Some(false))
        || chains.iter().any(|c| c.check.as_ref().is_some_and(|c| !c.holds))
        || report.actual_sum.as_ref().is_some_and(|a| !a.compare_le(&report.bound_sum).holds);
    Ok(Outcome { violation, json: json!({ "discriminant": to_json(&report), "chains": to_json(&chains) }), text })
}

pub fn lemmas(prep: &Prepared, settings: &Settings, alphas: &[Rational]) -> Result<Outcome, Error> {
    let primes: Vec<Prime> = primes_up_to(50).into_iter().map(|p| Prime::from_u64(p).expect("prime")).collect();
    let report: LemmaReport = check_polynomial(&prep.p, alphas, &primes, settings.precision)?;
    let mut text = String::new();
    for (kind, slack) in &report.min_slack {
        let n = report.checks.iter().filter(|c| c.kind == *kind).count();
        let bad = report.checks.iter().filter(|c| c.kind == *kind && !c.holds).count();
        let _ = writeln!(text, "{:<18} {n:>5} checks, {bad} violations, min slack {slack:.6}", kind.name());
    }
    Ok(Outcome { violation: !report.passed(), json: json!({ "lemmas": to_json(&report) }), text })
}
