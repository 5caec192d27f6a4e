use std::sync::Arc;

use eisenkit::disc::{
    actual_partial_discriminant, check_lsum, discriminant_bound, lambda_chain, silverman_bound, DiscFormula,
};
use eisenkit::poly::parse_bipoly;
use eisenkit::puiseux::{expand_regular, puiseux_branches};
use eisenkit::{Error, LogReal, NumberField, Rational};
use num_traits::Zero;

const LN2: f64 = std::f64::consts::LN_2;

fn sqrt2() -> Arc<NumberField> {
    Arc::new(NumberField::parse("x^2 - 2").unwrap())
}

#[test]
fn sqrt2_branch_field() {
    let p = parse_bipoly("w^2 - 2 - 2*z").unwrap();
    let bs = puiseux_branches(&p, sqrt2(), 30).unwrap();
    assert!(bs.complete);
    assert_eq!(bs.branches.len(), 2);
    for b in &bs.branches {
        let chain = lambda_chain(b);
        assert_eq!(chain.lambda(0), 2);
        assert!((1..30).all(|k| chain.lambda(k) == 1));
        let lsum = check_lsum(b, &chain, &p).unwrap();
        assert!(lsum.holds);
        assert!(lsum.lhs.is_zero() && lsum.rhs.is_zero());
    }
    let actual = actual_partial_discriminant(&sqrt2()).unwrap();
    assert!(actual.approx_eq(0.5 * 8f64.ln(), 1e-15));

    let r = discriminant_bound(&p, &bs, DiscFormula::Friendly).unwrap();
    // (1/2)·16·1·2·1·(log 2 + log 2 + 3)
    let expected = 16.0 * (2.0 * LN2 + 3.0);
    for row in &r.branches {
        assert_eq!(row.nu, 2);
        assert!(row.bound.approx_eq(expected, 1e-12), "{}", row.bound.to_f64());
        assert!(row.actual.as_ref().unwrap().approx_eq(1.5 * LN2, 1e-15));
        assert_eq!(row.actual_within_bound, Some(true));
    }
    assert!((expected - 70.18).abs() < 0.01);
}

#[test]
fn friendly_sum_with_zero_height() {
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let q = Arc::new(NumberField::rationals());
    let bs = puiseux_branches(&p, q, 20).unwrap();
    let r = discriminant_bound(&p, &bs, DiscFormula::Friendly).unwrap();
    assert!(r.height_p.exact_eq(&LogReal::zero()));
    assert_eq!((r.m, r.n, r.e_max), (1, 2, 1));
    let expected = 32.0 * (LN2 + 3.0);
    assert!(r.bound_sum.approx_eq(expected, 1e-12));
    assert!((expected - 118.18).abs() < 0.01);
    assert!(r.actual_sum.as_ref().unwrap().exact_eq(&LogReal::zero()));
}

#[test]
fn binomial_chain_is_trivial() {
    let p = parse_bipoly("w^2 - z - 1").unwrap();
    let q = Arc::new(NumberField::rationals());
    let b = expand_regular(&p, &q.one(), 40, q).unwrap();
    let chain = lambda_chain(&b);
    assert_eq!(chain.field_degree, 1);
    let lsum = check_lsum(&b, &chain, &p).unwrap();
    assert!(lsum.holds && lsum.lhs.is_zero() && lsum.rhs.is_zero());
}

#[test]
fn zero_series_chain() {
    let p = parse_bipoly("z*w^2 - z^2*w - w").unwrap();
    let bs = puiseux_branches(&p, Arc::new(NumberField::rationals()), 10).unwrap();
    let zero = bs.branches.iter().find(|b| b.is_zero()).expect("zero branch");
    let chain = lambda_chain(zero);
    assert!((0..10).all(|k| chain.lambda(k) == 1));
}

#[test]
fn actual_below_every_formula() {
    for (text, field) in [
        ("w^2 - 2 - 2*z", "x^2 - 2"),
        ("w^2 - 5 - z^2", "x^2 - 5"),
        ("w^2 + w - 1 - z", "x^2 + x - 1"),
        ("w^2 - 3*z*w - 3", "x^2 - 3"),
        ("(w - z)^2 - 2*z^4 + 1", "x^2 + 1"),
    ] {
        let p = parse_bipoly(text).unwrap();
        let f = Arc::new(NumberField::parse(field).unwrap());
        let bs = puiseux_branches(&p, f, 24).unwrap();
        assert!(bs.complete, "{text}");
        let mut sums = Vec::new();
        for formula in [DiscFormula::Integral, DiscFormula::Friendly, DiscFormula::General] {
            let r = discriminant_bound(&p, &bs, formula).unwrap();
            for row in &r.branches {
                assert_eq!(row.actual_within_bound, Some(true), "{text} {formula:?}");
            }
            if let Some(a) = &r.actual_sum {
                assert!(a.compare_le(&r.bound_sum).holds, "{text} {formula:?}");
            }
            sums.push(r.bound_sum);
        }
        assert!(sums[0].compare_le(&sums[1]).holds, "{text}: integral above friendly");
        for b in &bs.branches {
            let lsum = check_lsum(b, &lambda_chain(b), &p).unwrap();
            assert!(lsum.holds, "{text}");
        }
    }
}

#[test]
fn integral_formula_requires_unit_leading_coefficient() {
    let p = parse_bipoly("z*w^2 - w + 1").unwrap();
    let bs = puiseux_branches(&p, Arc::new(NumberField::rationals()), 20).unwrap();
    for formula in [DiscFormula::Integral, DiscFormula::Friendly] {
        match discriminant_bound(&p, &bs, formula) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("general")),
            other => panic!("{other:?}"),
        }
    }
    let r = discriminant_bound(&p, &bs, DiscFormula::General).unwrap();
    // 2(n−1)(h + 4n) + (8n−1)·ord D·(h + 5n + log m) with h = 0, n = 2, m = 1, ord D = 0
    assert!(r.bound_sum.approx_eq(16.0, 1e-12));
    assert_eq!(r.ord_d, 0);
}

#[test]
fn integral_per_branch_uses_order_of_vanishing() {
    // f = z + √2 z², P′_w(z, f) = 2(f − z) has order 2
    let p = parse_bipoly("(w - z)^2 - 2*z^4").unwrap();
    let bs = puiseux_branches(&p, sqrt2(), 12).unwrap();
    let r = discriminant_bound(&p, &bs, DiscFormula::Integral).unwrap();
    for row in &r.branches {
        assert_eq!(row.ord_derivative, Some(Rational::from_integer(2.into())));
    }
    assert!(r.ord_d >= 4);
}

#[test]
fn silverman_formula() {
    let f = sqrt2();
    let s = silverman_bound(&f, &f.theta()).unwrap();
    assert!(s.approx_eq(2.0 * LN2, 1e-12));
    assert!(actual_partial_discriminant(&f).unwrap().compare_le(&s).holds);
    let g = NumberField::parse("x^2 - x - 1").unwrap();
    let s = silverman_bound(&g, &g.theta()).unwrap();
    assert!(actual_partial_discriminant(&g).unwrap().compare_le(&s).holds);
}
