use super::{AlgNum, NumberField};
use crate::arith::{CBig, Rational};
use crate::poly::UniPoly;
use crate::Result;

/// Dense polynomial with coefficients in a [`NumberField`], lowest degree first.
///
/// Operations take the field explicitly; coefficients never carry a reference to it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FPoly {
    coeffs: Vec<AlgNum>,
}

impl FPoly {
    pub fn new(mut coeffs: Vec<AlgNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { coeffs }
    }

    pub fn zero() -> Self {
        FPoly { coeffs: Vec::new() }
    }

    pub fn from_rational_poly(f: &NumberField, p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| f.from_rational(c)).collect())
    }

    pub fn coeffs(&self) -> &[AlgNum] {
        &self.coeffs
    }

    pub fn coeff(&self, f: &NumberField, i: usize) -> AlgNum {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, f: &NumberField, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| f.add(&self.coeff(f, i), &o.coeff(f, i))).collect())
    }

    pub fn sub(&self, f: &NumberField, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| f.sub(&self.coeff(f, i), &o.coeff(f, i))).collect())
    }

    pub fn scale(&self, f: &NumberField, c: &AlgNum) -> Self {
        Self::new(self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn scale_rational(&self, f: &NumberField, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| f.scale(x, c)).collect())
    }

    pub fn mul(&self, f: &NumberField, o: &Self) -> Self {
        self.mul_trunc(f, o, usize::MAX)
    }

    /// Product with all terms of degree `≥ n` discarded.
    pub fn mul_trunc(&self, f: &NumberField, o: &Self, n: usize) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(n);
        let mut out = vec![f.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        Self::new(out)
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn derivative(&self, f: &NumberField) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.scale(c, &Rational::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn eval(&self, f: &NumberField, x: &AlgNum) -> AlgNum {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn monic(&self, f: &NumberField) -> Result<Self> {
        match self.coeffs.last() {
            None => Ok(Self::zero()),
            Some(l) => Ok(self.scale(f, &f.inv(l)?)),
        }
    }

    pub fn div_rem(&self, f: &NumberField, d: &Self) -> Result<(Self, Self)> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let inv = f.inv(d.coeffs.last().expect("non-zero"))?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = f.sub(&r[i + j], &f.mul(&c, dc));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic gcd.
    pub fn gcd(&self, f: &NumberField, o: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(f, &b)?.1;
            a = b;
            b = r.monic(f)?;
        }
        a.monic(f)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self, f: &NumberField) -> Result<Self> {
        let g = self.gcd(f, &self.derivative(f))?;
        if g.deg() == 0 {
            return self.monic(f);
        }
        self.div_rem(f, &g)?.0.monic(f)
    }

    /// Coefficients under the `i`-th embedding.
    pub fn embed(&self, f: &NumberField, i: usize) -> Vec<CBig> {
        self.coeffs.iter().map(|c| f.embed(c, i).0).collect()
    }

    pub fn display_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let a = num_traits::Signed::abs(&q);
                    let body = match (mono.is_empty(), a == Rational::from_integer(1.into())) {
                        (true, _) => a.to_string(),
                        (false, true) => mono,
                        (false, false) => format!("{}*{}", a, mono),
                    };
                    (num_traits::Signed::is_negative(&q), body)
                }
                None if mono.is_empty() => (false, format!("({})", c)),
                None => (false, format!("({})*{}", c, mono)),
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_over_quadratic_field() {
        let f = NumberField::parse("x^2 - 2").unwrap();
        let t = f.theta();
        // (y - θ)^2 (y + 1) has square-free part (y - θ)(y + 1).
        let lin = FPoly::new(vec![f.neg(&t), f.one()]);
        let p = lin.mul(&f, &lin).mul(&f, &FPoly::new(vec![f.one(), f.one()]));
        let s = p.squarefree_part(&f).unwrap();
        assert_eq!(s, lin.mul(&f, &FPoly::new(vec![f.one(), f.one()])));
        assert!(p.eval(&f, &t).is_zero());
    }
}
