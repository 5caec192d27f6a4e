use num_complex::Complex64;

use super::UniPoly;
use crate::arith::{real_from_f64, real_from_rational, CBig, Real};
use crate::{Error, Result};

/// Working precision is doubled up to this many bits before giving up.
const MAX_PRECISION: usize = 1 << 13;
const MAX_ITERATIONS: usize = 400;

/// A complex root known to lie in the closed disc `|x − center| ≤ radius`.
#[derive(Clone, Debug)]
pub struct RootApprox {
    pub center: CBig,
    pub radius: f64,
    pub multiplicity: usize,
}

impl RootApprox {
    pub fn re(&self) -> f64 {
        self.center.re.to_f64().value()
    }

    pub fn im(&self) -> f64 {
        self.center.im.to_f64().value()
    }

    pub fn abs(&self) -> f64 {
        self.center.abs().to_f64().value()
    }

    /// Upper bound for the modulus of the enclosed root.
    pub fn abs_upper(&self) -> f64 {
        self.abs() * (1.0 + 1e-15) + self.radius
    }

    /// Lower bound for the modulus of the enclosed root.
    pub fn abs_lower(&self) -> f64 {
        (self.abs() * (1.0 - 1e-15) - self.radius).max(0.0)
    }
}

/// All complex roots of a non-zero rational polynomial, each enclosed in a disc of
/// radius at most about `2^-prec · max(1, |root|)`.
pub fn complex_roots(p: &UniPoly, prec: usize) -> Result<Vec<RootApprox>> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let cs: Vec<CBig> = factor
            .coeffs()
            .iter()
            .map(|c| CBig::from_real(real_from_rational(c, prec + 64)))
            .collect();
        for (center, radius) in squarefree_roots(&cs, prec)? {
            out.push(RootApprox { center, radius, multiplicity: mult });
        }
    }
    Ok(out)
}

/// `Σ c_i x^i` by Horner's rule.
pub fn eval_c(coeffs: &[CBig], x: &CBig) -> CBig {
    let mut it = coeffs.iter().rev();
    let mut acc = it.next().cloned().unwrap_or_else(|| CBig::zero(64));
    for c in it {
        acc = &(&acc * x) + c;
    }
    acc
}

fn eval_with_derivative(coeffs: &[CBig], x: &CBig) -> (CBig, CBig) {
    let mut it = coeffs.iter().rev();
    let mut p = it.next().cloned().expect("non-empty");
    let mut dp = CBig::zero(x.re.precision());
    for c in it {
        dp = &(&dp * x) + &p;
        p = &(&p * x) + c;
    }
    (p, dp)
}

fn f64_start(coeffs: &[CBig]) -> Option<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].to_c64();
    if lead.norm() == 0.0 || !lead.norm().is_finite() {
        return None;
    }
    let mut monic = Vec::with_capacity(d + 1);
    for c in coeffs {
        let v = c.to_c64() / lead;
        if !v.re.is_finite() || !v.im.is_finite() {
            return None;
        }
        monic.push(v);
    }
    // Fujiwara bound on the root moduli.
    let bound = (0..d)
        .map(|i| {
            let a = monic[i].norm();
            let root = (d - i) as f64;
            if i == 0 { (a / 2.0).powf(1.0 / root) } else { a.powf(1.0 / root) }
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    if !bound.is_finite() || bound > 1e250 {
        return None;
    }
    let r = bound.max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r * 0.9, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..d {
            let mut p = monic[d];
            let mut dp = Complex64::new(0.0, 0.0);
            for c in monic[..d].iter().rev() {
                dp = dp * z[i] + p;
                p = p * z[i] + c;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (1.0 - ratio * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < 1e-14 {
            break;
        }
    }
    Some(z)
}

/// Roots of a square-free polynomial with complex coefficients (lowest degree first),
/// polished at increasing precision until the inclusion discs are pairwise disjoint.
pub fn squarefree_roots(coeffs: &[CBig], prec: usize) -> Result<Vec<(CBig, f64)>> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut work = prec + 32;
    let mut z: Vec<CBig> = match f64_start(coeffs) {
        Some(v) => v.into_iter().map(|c| CBig::from_f64(c, work)).collect(),
        None => (0..d)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
                CBig::from_f64(Complex64::from_polar(1.0, a), work)
            })
            .collect(),
    };
    while work <= MAX_PRECISION {
        let cs: Vec<CBig> = coeffs.iter().map(|c| c.with_precision(work)).collect();
        z = z.iter().map(|x| x.with_precision(work)).collect();
        aberth(&cs, &mut z, work);
        if let Some(radii) = inclusion_radii(&cs, &z, work) {
            let small = radii
                .iter()
                .zip(&z)
                .all(|(r, c)| *r <= 2f64.powi(-(prec as i32)) * c.abs().to_f64().value().max(1.0));
            if small {
                return Ok(z.into_iter().zip(radii).collect());
            }
        }
        work *= 2;
    }
    Err(Error::Numerical(format!(
        "root isolation did not converge for a degree-{} polynomial at {} bits",
        d, MAX_PRECISION
    )))
}

fn aberth(cs: &[CBig], z: &mut [CBig], work: usize) {
    let d = z.len();
    let eps = 2f64.powi(-(work as i32 - 24));
    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval_with_derivative(cs, &z[i]);
            if p.is_zero() {
                continue;
            }
            if dp.is_zero() {
                worst = f64::MAX;
                let nudge = CBig::from_f64(Complex64::new(eps.sqrt(), eps.sqrt()), work);
                z[i] = &z[i] + &nudge;
                continue;
            }
            let ratio = p.div(&dp);
            let mut s = CBig::zero(work);
            for j in 0..d {
                if j != i {
                    let diff = &z[i] - &z[j];
                    if !diff.is_zero() {
                        s = &s + &CBig::from_real(Real::ONE.with_precision(work).value()).div(&diff);
                    }
                }
            }
            let one = CBig::from_real(Real::ONE.with_precision(work).value());
            let denom = &one - &(&ratio * &s);
            let step = if denom.is_zero() { ratio } else { ratio.div(&denom) };
            z[i] = &z[i] - &step;
            let rel = step.abs().to_f64().value() / z[i].abs().to_f64().value().max(1.0);
            worst = worst.max(rel);
        }
        if worst < eps {
            break;
        }
    }
}

/// Disc radii `d |p(z_i)| / |a_d Π_{j≠i} (z_i − z_j)|` inflated by the Horner rounding
/// error; `None` if two discs overlap (or a root estimate is repeated).
fn inclusion_radii(cs: &[CBig], z: &[CBig], work: usize) -> Option<Vec<f64>> {
    let d = z.len();
    let lead = cs[d].abs();
    let ulp = 2f64.powi(-(work as i32 - 4));
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let p = eval_c(cs, &z[i]).abs();
        let zi = z[i].abs();
        let mut sum_abs = Real::ZERO.with_precision(work).value();
        let mut pw = Real::ONE.with_precision(work).value();
        for c in cs {
            sum_abs = &sum_abs + &(&c.abs() * &pw);
            pw = &pw * &zi;
        }
        let err = &sum_abs * &real_from_f64(ulp * (2 * d + 2) as f64, 64);
        let mut denom = lead.clone();
        for j in 0..d {
            if j != i {
                denom = &denom * &(&z[i] - &z[j]).abs();
            }
        }
        if denom.repr().significand().is_zero() {
            return None;
        }
        let r = &(&(&p + &err) * &real_from_f64(d as f64, 64)) / &denom;
        let r = r.to_f64().value() * (1.0 + 1e-12);
        if !r.is_finite() {
            return None;
        }
        radii.push(r);
    }
    for i in 0..d {
        for j in i + 1..d {
            let gap = (&z[i] - &z[j]).abs().to_f64().value() * (1.0 - 1e-12);
            if gap <= radii[i] + radii[j] {
                return None;
            }
        }
    }
    Some(radii)
}
