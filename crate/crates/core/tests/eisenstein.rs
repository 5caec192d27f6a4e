use std::sync::Arc;

use eisenkit::eisenstein::{
    exceptional_set_bound, global_divisor, prime_sum_check, verify_bounds, verify_conjectural, DivisorMode, Variant,
};
use eisenkit::poly::parse_bipoly;
use eisenkit::puiseux::{expand_regular, puiseux_branches};
use eisenkit::{LogReal, NumberField, Place, Prime};

fn qq() -> Arc<NumberField> {
    Arc::new(NumberField::rationals())
}

fn place(p: u64) -> Place {
    Place::Finite(Prime::from_u64(p).unwrap())
}

#[test]
fn binomial_certificate() {
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
    assert!(cert.divisor_a.get(&place(2)).exact_eq(&LogReal::log_of_int(4)));
    assert!(cert.divisor_a_prime.get(&place(2)).exact_eq(&LogReal::zero()));
    assert!(cert.divisor_a.get(&Place::Infinite).exact_eq(&LogReal::log_of_int(36)));
    assert!(cert.divisor_a_prime.get(&Place::Infinite).exact_eq(&LogReal::log_of_int(3)));
    assert!(cert.height_a.exact_eq(&LogReal::log_of_int(144)));
    assert!(cert.height_a_prime.exact_eq(&LogReal::log_of_int(3)));
    assert!(cert.height_check.holds && cert.a_prime_check.holds);
    let places: Vec<String> = cert.divisor_a.support().map(|v| v.to_string()).collect();
    assert_eq!(places, vec!["inf", "2"]);
}

#[test]
fn square_root_general_certificate() {
    let p = parse_bipoly("w^2 - z").unwrap();
    let cert = global_divisor(&p, 2, 1, Variant::General, DivisorMode::Coefficient).unwrap();
    assert!(cert.divisor_a.support().all(|v| *v == Place::Infinite || *v == place(2)));
    assert!(cert.divisor_a.get(&place(2)).exact_eq(&LogReal::log_of_int(16)));
    assert!(cert.height_check.holds);
    let b = puiseux_branches(&p, qq(), 20).unwrap();
    let report = verify_bounds(&cert, &b.branches[0]).unwrap();
    assert!(report.passed());
}

#[test]
fn linear_polynomial_is_trivial_off_infinity() {
    let p = parse_bipoly("w - z").unwrap();
    let cert = global_divisor(&p, 1, 1, Variant::Regular, DivisorMode::Coefficient).unwrap();
    assert_eq!(cert.divisor_a.support().count(), 1);
    assert!(cert.divisor_a.get(&place(2)).exact_eq(&LogReal::zero()));
    assert!(cert.divisor_a.get(&Place::Infinite).exact_eq(&LogReal::log_of_int(6)));
}

#[test]
fn regular_variant_rejects_poles() {
    let p = parse_bipoly("z*w^2 - w + 1").unwrap();
    assert!(global_divisor(&p, 1, -1, Variant::Regular, DivisorMode::Coefficient).is_err());
    assert!(global_divisor(&p, 2, 0, Variant::A0Regular, DivisorMode::Coefficient).is_err());
}

#[test]
fn catalan_branches_verify_in_every_variant() {
    let p = parse_bipoly("z*w^2 - w + 1").unwrap();
    let b = puiseux_branches(&p, qq(), 60).unwrap();
    for s in &b.branches {
        for variant in [Variant::General, Variant::A0General] {
            let cert = global_divisor(&p, s.e, s.kappa, variant, DivisorMode::Coefficient).unwrap();
            let r = verify_bounds(&cert, s).unwrap();
            assert!(r.passed(), "{variant} κ = {}: {:?}", s.kappa, r.failures);
            assert!(cert.holds());
        }
        if s.kappa == 0 {
            let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
            let r = verify_bounds(&cert, s).unwrap();
            assert!(r.passed());
            // all Catalan numbers are integers, so every finite place has slack ≥ 0 trivially
            assert!(r.checked_places.iter().filter(|v| !v.is_infinite()).all(|v| *v == place(2)));
        }
    }
}

#[test]
fn zero_series_passes_vacuously() {
    let p = parse_bipoly("w").unwrap();
    let b = puiseux_branches(&p, qq(), 5).unwrap();
    assert!(b.branches[0].is_zero());
    let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient);
    // m = 0 here; the theorem needs m ≥ 1
    assert!(cert.is_err());
    let p = parse_bipoly("w + z*w^2").unwrap();
    let b = puiseux_branches(&p, qq(), 5).unwrap();
    let zero = b.branches.iter().find(|s| s.is_zero()).unwrap();
    let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
    let r = verify_bounds(&cert, zero).unwrap();
    assert!(r.passed() && r.checks == 0 && r.slack_min.is_none());
}

#[test]
fn root_based_mode_also_verifies() {
    let p = parse_bipoly("w^2 - 3z - 1").unwrap();
    let f = qq();
    let s = expand_regular(&p, &f.one(), 80, f.clone()).unwrap();
    let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::RootBased).unwrap();
    let coeff = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
    assert!(cert.height_a.compare_le(&coeff.height_a).holds);
    assert!(verify_bounds(&cert, &s).unwrap().passed());
}

#[test]
fn algebraic_coefficients_verify() {
    let p = parse_bipoly("w^2 - 2 - 2z").unwrap();
    let f = Arc::new(NumberField::parse("x^2 - 2").unwrap());
    let b = puiseux_branches(&p, f, 40).unwrap();
    for s in &b.branches {
        let cert = global_divisor(&p, 1, 0, Variant::Regular, DivisorMode::Coefficient).unwrap();
        let r = verify_bounds(&cert, s).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let cert = global_divisor(&p, 1, 0, Variant::A0Regular, DivisorMode::Coefficient).unwrap();
        assert!(verify_bounds(&cert, s).unwrap().passed());
    }
}

#[test]
fn conjectural_exponent_is_reported() {
    let p = parse_bipoly("w^2 - z").unwrap();
    let b = puiseux_branches(&p, qq(), 10).unwrap();
    let cert = global_divisor(&p, 2, 1, Variant::General, DivisorMode::Coefficient).unwrap();
    let c = verify_conjectural(&cert, &b.branches[0]).unwrap();
    assert!(c.checks > 0);
}

#[test]
fn exceptional_sets() {
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let b = puiseux_branches(&p, qq(), 30).unwrap();
    let r = exceptional_set_bound(&p, &b).unwrap();
    assert_eq!(r.observed, vec![Prime::from_u64(2).unwrap()]);
    assert!(r.observed_height.exact_eq(&LogReal::log_of_int(2)));
    assert!(r.bound.approx_eq(6.0 * (2f64.ln() + 1.0), 1e-12));
    assert!(r.holds);

    let p = parse_bipoly("z*w^2 - w + 1").unwrap();
    let b = puiseux_branches(&p, qq(), 60).unwrap();
    assert!(exceptional_set_bound(&p, &b).unwrap().observed.is_empty());

    let p = parse_bipoly("w - z/3").unwrap();
    let b = puiseux_branches(&p, qq(), 3).unwrap();
    assert_eq!(exceptional_set_bound(&p, &b).unwrap().observed, vec![Prime::from_u64(3).unwrap()]);
}

#[test]
fn exceptional_set_grows_with_truncation() {
    let p = parse_bipoly("w^3 - w - z/5 + 2z^2").unwrap();
    let mut prev: Vec<Prime> = Vec::new();
    for k in [1, 3, 6, 12] {
        let b = puiseux_branches(&p, qq(), k).unwrap();
        let obs = exceptional_set_bound(&p, &b).unwrap().observed;
        assert!(prev.iter().all(|q| obs.contains(q)));
        prev = obs;
    }
}

#[test]
fn prime_sum_small_range() {
    let r = prime_sum_check(1000);
    assert!(r.holds);
    assert!(r.max_ratio < 2.3);
}
