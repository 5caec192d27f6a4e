use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::UniPoly;
use crate::arith::Rational;

/// Sparse polynomial in `z` and `w` over Q. Keys are `(z-exponent, w-exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    /// Convenience constructor from `(i, j, c)` integer triples meaning `c z^i w^j`.
    pub fn from_int_terms(t: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(t.iter().map(|&(i, j, c)| ((i, j), Rational::from_integer(c.into()))))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn z() -> Self {
        Self::from_terms([((1, 0), Rational::one())])
    }

    pub fn w() -> Self {
        Self::from_terms([((0, 1), Rational::one())])
    }

    pub(crate) fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `m = deg_z`.
    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// `n = deg_w`.
    pub fn deg_w(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `P = Σ_j p_j(z) w^j`, returned as `[p_0, …, p_n]`.
    pub fn w_coeffs(&self) -> Vec<UniPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let n = self.deg_w() as usize;
        let m = self.deg_z() as usize;
        let mut rows = vec![vec![Rational::zero(); m + 1]; n + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_w_coeffs(cs: &[UniPoly]) -> Self {
        let mut p = Self::zero();
        for (j, q) in cs.iter().enumerate() {
            for (i, c) in q.coeffs().iter().enumerate() {
                p.add_term((i as u32, j as u32), c.clone());
            }
        }
        p
    }

    /// Leading coefficient in `w`, `p_n(z)`.
    pub fn lead_w(&self) -> UniPoly {
        self.w_coeffs().pop().unwrap_or_else(UniPoly::zero)
    }

    /// `P(0, w)` as a polynomial in `w`.
    pub fn at_z0(&self) -> UniPoly {
        UniPoly::new(
            self.w_coeffs()
                .iter()
                .map(|q| q.coeff(0))
                .collect(),
        )
    }

    /// Largest `N` with `z^N | P`.
    pub fn z_order(&self) -> u32 {
        self.terms.keys().map(|k| k.0).min().unwrap_or(0)
    }

    pub fn derivative_w(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * Rational::from_integer(j.into()))),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(Rational::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `P(z, w + a)`.
    pub fn shift_w(&self, a: &Rational) -> Self {
        let cs = self.w_coeffs();
        let lin = Self::from_terms([((0, 1), Rational::one()), ((0, 0), a.clone())]);
        let mut acc = Self::zero();
        for q in cs.iter().rev() {
            acc = &(&acc * &lin) + &Self::from_w_coeffs(&[q.clone()]);
        }
        acc
    }

    /// Evaluates `P(z0, w)` at a rational `z0`.
    pub fn eval_z(&self, z0: &Rational) -> UniPoly {
        UniPoly::new(self.w_coeffs().iter().map(|q| q.eval(z0)).collect())
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        self.terms.values()
    }

    /// Terms in the canonical printing order: total degree descending, ties by `w`-degree descending.
    pub fn graded_terms(&self) -> Vec<((u32, u32), Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&k, c)| (k, c.clone())).collect();
        v.sort_by(|a, b| {
            let (ta, tb) = (a.0 .0 + a.0 .1, b.0 .0 + b.0 .1);
            tb.cmp(&ta).then(b.0 .1.cmp(&a.0 .1))
        });
        v
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (&k, c) in &o.terms {
            p.add_term(k, c.clone());
        }
        p
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (&k, c) in &o.terms {
            p.add_term(k, -c.clone());
        }
        p
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut p = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term((i + k, j + l), a * b);
            }
        }
        p
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .graded_terms()
            .into_iter()
            .map(|((i, j), c)| (c, vec![("z".to_string(), i as usize), ("w".to_string(), j as usize)]))
            .collect();
        f.write_str(&super::print::format_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_coefficients() {
        let p = BiPoly::from_int_terms(&[(1, 2, 1), (0, 1, -1), (0, 0, 1)]);
        assert_eq!((p.deg_z(), p.deg_w()), (1, 2));
        assert_eq!(p.lead_w(), UniPoly::from_ints(&[0, 1]));
        assert_eq!(p.at_z0(), UniPoly::from_ints(&[1, -1]));
        assert_eq!(p.derivative_w(), BiPoly::from_int_terms(&[(1, 1, 2), (0, 0, -1)]));
        assert_eq!(BiPoly::from_w_coeffs(&p.w_coeffs()), p);
        assert_eq!(p.to_string(), "z*w^2 - w + 1");
    }

    #[test]
    fn shift_in_w() {
        let p = BiPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]);
        let s = p.shift_w(&Rational::one());
        assert_eq!(s, BiPoly::from_int_terms(&[(0, 2, 1), (0, 1, 2), (0, 0, 1), (1, 0, -1)]));
    }
}
