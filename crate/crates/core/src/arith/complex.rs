use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::log_real::{real_from_f64, Real};

/// Complex number with [`Real`] parts, used to polish roots beyond `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct CBig {
    pub re: Real,
    pub im: Real,
}

impl CBig {
    pub fn new(re: Real, im: Real) -> Self {
        CBig { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        CBig::from_f64(Complex64::new(0.0, 0.0), prec)
    }

    pub fn from_real(re: Real) -> Self {
        let im = Real::ZERO.with_precision(re.precision()).value();
        CBig { re, im }
    }

    pub fn from_f64(z: Complex64, prec: usize) -> Self {
        CBig { re: real_from_f64(z.re, prec), im: real_from_f64(z.im, prec) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        CBig {
            re: self.re.clone().with_precision(prec).value(),
            im: self.im.clone().with_precision(prec).value(),
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        CBig { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, r: &Real) -> Self {
        CBig { re: &self.re * r, im: &self.im * r }
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        let d = other.norm_sqr();
        let num = self * &other.conj();
        CBig { re: &num.re / &d, im: &num.im / &d }
    }

    pub fn is_zero(&self) -> bool {
        self.re.repr().significand().is_zero() && self.im.repr().significand().is_zero()
    }
}

impl Add for &CBig {
    type Output = CBig;
    fn add(self, o: &CBig) -> CBig {
        CBig { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &CBig {
    type Output = CBig;
    fn sub(self, o: &CBig) -> CBig {
        CBig { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &CBig {
    type Output = CBig;
    fn mul(self, o: &CBig) -> CBig {
        CBig {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Neg for &CBig {
    type Output = CBig;
    fn neg(self) -> CBig {
        CBig { re: -self.re.clone(), im: -self.im.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a = CBig::from_f64(Complex64::new(1.0, 2.0), 128);
        let b = CBig::from_f64(Complex64::new(-3.0, 0.5), 128);
        let p = (&a * &b).to_c64();
        assert_eq!(p, Complex64::new(1.0, 2.0) * Complex64::new(-3.0, 0.5));
        let back = (&a * &b).div(&b).to_c64();
        assert!((back - Complex64::new(1.0, 2.0)).norm() < 1e-30);
        assert!((a.abs().to_f64().value() - 5f64.sqrt()).abs() < 1e-15);
    }
}
