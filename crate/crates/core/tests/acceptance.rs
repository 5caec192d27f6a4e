//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion does.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eisenkit::arith::{abs_at_place, rat_valuation};
use eisenkit::disc::{actual_partial_discriminant, check_lsum, discriminant_bound, lambda_chain, DiscFormula};
use eisenkit::eisenstein::{exceptional_set_bound, global_divisor, prime_sum_check, verify_bounds, DivisorMode, Variant};
use eisenkit::lemmas::{mahler_bounds, resultant_height_bound, root_bounds, translation_bound, InequalityCheck};
use eisenkit::poly::{is_w_separable, parse_bipoly};
use eisenkit::puiseux::{expand_regular, padic_sup_norm, puiseux_branches};
use eisenkit::{BiPoly, LogReal, NumberField, Place, Prime, Rational, UniPoly};

const TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn qq() -> Arc<NumberField> {
    Arc::new(NumberField::rationals())
}

fn two() -> Prime {
    Prime::from_u64(2).unwrap()
}

fn ln(x: u64) -> LogReal {
    LogReal::log_of_int(x)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn binary_digit_sum(k: u64) -> u64 {
    k.count_ones() as u64
}

fn criterion_1() -> Outcome {
    let ((cert, series, report), elapsed) = timed(|| {
        let p = parse_bipoly("w^2 - z - 1").unwrap();
        let f = qq();
        let series = expand_regular(&p, &f.one(), 200, f).unwrap();
        let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
        let report = verify_bounds(&cert, &series).unwrap();
        (cert, series, report)
    });
    let v2 = Place::Finite(two());
    let pairs = cert.divisor_a_prime.get(&v2).exact_eq(&LogReal::zero())
        && cert.divisor_a.get(&v2).exact_eq(&ln(4))
        && cert.divisor_a_prime.get(&Place::Infinite).exact_eq(&ln(3))
        && cert.divisor_a.get(&Place::Infinite).exact_eq(&ln(36));
    // |C(1/2, k)|_2 = 2^{2k − s_2(k)} against A′_2 A_2^k = 4^k: the slack is s_2(k) log 2
    let mut slack_ok = true;
    let mut oracle_tight = Vec::new();
    for k in 0..=200i64 {
        let a = series.coeff(k).as_rational().unwrap();
        let lhs = abs_at_place(&a, &v2);
        let rhs = cert.divisor_a_prime.get(&v2).add(&cert.divisor_a.get(&v2).scale_int(k));
        let s = binary_digit_sum(k as u64);
        slack_ok &= rhs.sub(&lhs).exact_eq(&ln(2).scale_int(s as i64));
        if rat_valuation(&a, &two()).unwrap() == -2 * k {
            oracle_tight.push(k);
        }
    }
    let tight_2: Vec<i64> = report.tight.iter().filter(|(v, _)| *v == v2).map(|(_, k)| *k).collect();
    let pass = pairs && report.passed() && slack_ok && tight_2 == oracle_tight && elapsed < Duration::from_secs(2);
    outcome(
        pass,
        format!(
            "divisor pairs {pairs}, {} checks with {} failures, 2-adic slack = s_2(k) log 2 for all k: {slack_ok}, tight at 2: {tight_2:?}, {:.2?}",
            report.checks,
            report.failures.len(),
            elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
    let ln2 = std::f64::consts::LN_2;
    let expected_bound = 6.0 * ln2 + 14.0;
    let slack = cert.theorem_bound.sub(&cert.height_a).to_f64();
    let pass = cert.height_a.exact_eq(&ln(144))
        && cert.theorem_bound.approx_eq(expected_bound, TOL)
        && (cert.height_a.to_f64() - 4.970).abs() < 1e-3
        && (cert.theorem_bound.to_f64() - 18.159).abs() < 1e-3
        && cert.height_check.holds
        && slack > -TOL;
    outcome(
        pass,
        format!(
            "h(A) = {:.6} <= {:.6}, slack {slack:.6}",
            cert.height_a.to_f64(),
            cert.theorem_bound.to_f64()
        ),
    )
}

fn random_bipoly(rng: &mut ChaCha8Rng, max_deg: u32, max_coeff: i64) -> BiPoly {
    let m = rng.gen_range(1..=max_deg);
    let n = rng.gen_range(1..=max_deg);
    let mut terms = Vec::new();
    for i in 0..=m {
        for j in 0..=n {
            terms.push(((i, j), int(rng.gen_range(-max_coeff..=max_coeff))));
        }
    }
    // pin the degrees so that m and n are attained
    terms.push(((m, n), int(rng.gen_range(1..=max_coeff))));
    terms.push(((0, n), int(rng.gen_range(1..=max_coeff))));
    BiPoly::from_terms(terms)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let start = Instant::now();
    let mut tested = 0;
    let mut violations = Vec::new();
    let mut errors = Vec::new();
    while tested < 200 {
        let p = random_bipoly(&mut rng, 4, 50);
        if p.deg_z() == 0 || !is_w_separable(&p).unwrap() {
            continue;
        }
        tested += 1;
        for variant in [Variant::Regular, Variant::A0Regular] {
            match global_divisor(&p, 1, 0, variant, DivisorMode::Coefficient) {
                Ok(cert) => {
                    let a_prime_ok = cert.height_a_prime.compare_le(&cert.height_p.add(&ln(3))).holds;
                    if !(cert.height_check.holds && cert.a_prime_check.holds && a_prime_ok) {
                        violations.push(format!("{variant}: {p}"));
                    }
                }
                Err(e) => errors.push(format!("{variant}: {p}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = violations.is_empty() && errors.is_empty() && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "{tested} polynomials, {} violations, {} errors{}, {:.2?}",
            violations.len(),
            errors.len(),
            errors.first().map(|e| format!(" (first: {e})")).unwrap_or_default(),
            elapsed
        ),
    )
}

fn criterion_4() -> Outcome {
    let catalan = parse_bipoly("z*w^2 - w + 1").unwrap();
    let bs = puiseux_branches(&catalan, qq(), 100).unwrap();
    let pole = bs.branches.iter().find(|b| b.kappa == -1).expect("pole branch");
    let cert = global_divisor(&catalan, 1, -1, Variant::General, DivisorMode::Coefficient).unwrap();
    let r1 = verify_bounds(&cert, pole).unwrap();
    let pole_ok = pole.e == 1 && pole.truncation >= 100 && r1.passed() && cert.holds() && cert.shift() == -1;

    let sq = parse_bipoly("w^2 - z").unwrap();
    let bs = puiseux_branches(&sq, qq(), 100).unwrap();
    let b = &bs.branches[0];
    let cert2 = global_divisor(&sq, 2, 1, Variant::General, DivisorMode::Coefficient).unwrap();
    let r2 = verify_bounds(&cert2, b).unwrap();
    // (3n − 1)h + 3n log(mn) + 7en with h = 0, m = 1, n = 2, e = 2
    let bound = 6.0 * std::f64::consts::LN_2 + 28.0;
    let sq_ok = b.e == 2 && b.kappa == 1 && r2.passed() && cert2.theorem_bound.approx_eq(bound, TOL) && cert2.holds();
    outcome(
        pole_ok && sq_ok,
        format!(
            "pole branch: {} checks, {} failures; w^2 - z (e = 2, kappa = 1): {} checks, {} failures, h(A) = {:.4} <= {:.4}",
            r1.checks,
            r1.failures.len(),
            r2.checks,
            r2.failures.len(),
            cert2.height_a.to_f64(),
            cert2.theorem_bound.to_f64()
        ),
    )
}

fn criterion_5() -> Outcome {
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let bs = puiseux_branches(&p, qq(), 60).unwrap();
    let r = exceptional_set_bound(&p, &bs).unwrap();
    let bound = 6.0 * (std::f64::consts::LN_2 + 1.0);
    let bin_ok =
        r.observed == vec![two()] && r.observed_height.exact_eq(&ln(2)) && r.bound.approx_eq(bound, TOL) && r.holds;

    let c = parse_bipoly("z*w^2 - w + 1").unwrap();
    let bs = puiseux_branches(&c, qq(), 200).unwrap();
    let rc = exceptional_set_bound(&c, &bs).unwrap();
    let cat_ok = rc.observed.is_empty() && rc.truncation >= 200 && rc.holds;
    outcome(
        bin_ok && cat_ok,
        format!(
            "binomial S = {:?}, h(S) = {:.4} <= {:.4}; Catalan S = {:?} at K = {}",
            r.observed.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            r.observed_height.to_f64(),
            r.bound.to_f64(),
            rc.observed.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            rc.truncation
        ),
    )
}

fn random_unipoly(rng: &mut ChaCha8Rng, max_deg: usize, max_coeff: i64) -> UniPoly {
    let d = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-max_coeff..=max_coeff)).collect();
    if c[d] == 0 {
        c[d] = rng.gen_range(1..=max_coeff);
    }
    UniPoly::from_ints(&c)
}

fn tally(name: &str, checks: &[InequalityCheck], instances: usize) -> (bool, String) {
    let bad = checks.iter().filter(|c| !c.holds).count();
    let min = checks.iter().map(|c| c.slack()).fold(f64::INFINITY, f64::min);
    (bad == 0, format!("{name}: {instances} instances, {} checks, {bad} violations, min slack {min:.3}", checks.len()))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let small_primes: Vec<Prime> = [2, 3, 5, 7].iter().map(|&p| Prime::from_u64(p).unwrap()).collect();
    let mut lines = Vec::new();
    let mut pass = true;

    let mut checks = Vec::new();
    let mut count = 0;
    while count < 200 {
        let p = random_bipoly(&mut rng, 4, 100);
        if p.deg_z() == 0 {
            continue;
        }
        count += 1;
        checks.push(resultant_height_bound(&p).unwrap());
    }
    let (ok, line) = tally("resultant height", &checks, count);
    pass &= ok;
    lines.push(line);

    let mut checks = Vec::new();
    for _ in 0..200 {
        checks.extend(mahler_bounds(&random_unipoly(&mut rng, 8, 100), 128).unwrap());
    }
    let (ok, line) = tally("Mahler", &checks, 200);
    pass &= ok;
    lines.push(line);

    let mut checks = Vec::new();
    for _ in 0..200 {
        checks.extend(root_bounds(&random_unipoly(&mut rng, 8, 100), &small_primes, 128).unwrap());
    }
    let (ok, line) = tally("root bounds", &checks, 200);
    pass &= ok;
    lines.push(line);

    let mut checks = Vec::new();
    for _ in 0..200 {
        let p = random_bipoly(&mut rng, 4, 100);
        let num: i64 = rng.gen_range(-50..=50);
        let den: i64 = rng.gen_range(1..=20);
        checks.push(translation_bound(&p, &Rational::new(num.into(), den.into())).unwrap());
    }
    let (ok, line) = tally("translation", &checks, 200);
    pass &= ok;
    lines.push(line);
    outcome(pass, lines.join("; "))
}

fn criterion_7() -> Outcome {
    let p = parse_bipoly("w^2 - 2 - 2*z").unwrap();
    let field = Arc::new(NumberField::parse("x^2 - 2").unwrap());
    let actual = actual_partial_discriminant(&field).unwrap();
    let half = Rational::new(1.into(), 2.into());
    let actual_ok = actual.exact_eq(&ln(8).scale(&half)) && (actual.to_f64() - 1.0397).abs() < 1e-4;
    let bs = puiseux_branches(&p, field, 40).unwrap();
    let report = discriminant_bound(&p, &bs, DiscFormula::Friendly).unwrap();
    let ln2 = std::f64::consts::LN_2;
    let oracle = 0.5 * 16.0 * 1.0 * 2.0 * 1.0 * (ln2 + ln2 + 3.0);
    let mut ok = actual_ok && bs.complete && report.branches.len() == 2;
    let mut bound = 0.0;
    for row in &report.branches {
        bound = row.bound.to_f64();
        ok &= row.bound.approx_eq(oracle, 1e-9) && (bound - 70.2).abs() < 0.05;
        ok &= row.actual.as_ref().is_some_and(|a| a.compare_le(&row.bound).holds);
    }
    let mut lsum = true;
    for b in &bs.branches {
        lsum &= check_lsum(b, &lambda_chain(b), &p).map(|c| c.holds).unwrap_or(false);
    }
    outcome(ok && lsum, format!("actual {:.4} <= bound {bound:.4}, chain inequality {lsum}", actual.to_f64()))
}

fn criterion_8() -> Outcome {
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let f = qq();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut samples = 0;
    let mut bad = 0;
    for &k in &[10usize, 40, 80] {
        let series = expand_regular(&p, &f.one(), k, f.clone()).unwrap();
        let coeffs: Vec<Rational> = (0..=k as i64).map(|i| series.coeff(i).as_rational().unwrap()).collect();
        for rho in [-5i64, -3, -1, 0, 2] {
            let m_r = padic_sup_norm(&series, &two(), &int(rho), None).unwrap();
            for _ in 0..4 {
                // z = 2^{-rho} u / v with u, v odd has |z|_2 = 2^rho
                let u = 2 * rng.gen_range(-200i64..=200) + 1;
                let v = 2 * rng.gen_range(0i64..=200) + 1;
                let z = Rational::new(u.into(), v.into()) * pow2(-rho);
                debug_assert_eq!(rat_valuation(&z, &two()).unwrap(), -rho);
                let mut val = Rational::zero();
                for c in coeffs.iter().rev() {
                    val = val * &z + c;
                }
                samples += 1;
                let c = abs_at_place(&val, &Place::Finite(two())).compare_le(&m_r);
                if !(c.exact && c.holds) {
                    bad += 1;
                }
            }
        }
    }
    outcome(samples >= 50 && bad == 0, format!("{samples} samples, {bad} violations"))
}

/// `2^e` as a rational.
fn pow2(e: i64) -> Rational {
    let base = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base.abs())
    }
}

fn criterion_9() -> Outcome {
    let (r, elapsed) = timed(|| prime_sum_check(10_000));
    outcome(
        r.holds && r.violations.is_empty() && elapsed < Duration::from_secs(5),
        format!("n <= {}: max ratio {:.4} at n = {}, {:.2?}", r.n_max, r.max_ratio, r.argmax, elapsed),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("binomial golden test", criterion_1),
        ("divisor height theorem", criterion_2),
        ("random corpus conformance", criterion_3),
        ("ramified and pole branches", criterion_4),
        ("exceptional set", criterion_5),
        ("auxiliary inequalities", criterion_6),
        ("discriminant", criterion_7),
        ("p-adic sup norm", criterion_8),
        ("prime sum", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} ({name}): {} | {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
