use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::is_irreducible_mod_p;
use crate::arith::primes::primes_up_to;
use crate::arith::{real_from_rational, CBig, Prime, Rational, DEFAULT_PRECISION};
use crate::poly::{bareiss_det, complex_roots, discriminant_w, parse_unipoly, BiPoly, UniPoly};
use crate::{Error, Result};

/// Number of small primes tried when looking for an irreducibility witness.
const WITNESS_ATTEMPTS: usize = 50;

/// Element of Q(θ) in power-basis coordinates `Σ c_j θ^j`, `j < d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgNum {
    coords: Vec<Rational>,
}

impl AlgNum {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coords[0].clone())
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .coords
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (c.clone(), vec![("θ".to_string(), j)]))
            .collect();
        f.write_str(&crate::poly::format_terms(&terms))
    }
}

/// The number field (or, without an irreducibility witness, the étale algebra) Q[x]/(g)
/// for a monic square-free integer polynomial `g`.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: UniPoly,
    degree: usize,
    witness: Option<Prime>,
    discriminant: BigInt,
    embeddings: Vec<CBig>,
    radii: Vec<f64>,
    precision: usize,
}

impl NumberField {
    pub fn new(g: &UniPoly) -> Result<Self> {
        Self::with_precision(g, DEFAULT_PRECISION)
    }

    /// Q itself, presented as Q[x]/(x).
    pub fn rationals() -> Self {
        Self::new(&UniPoly::x()).expect("x is a valid modulus")
    }

    /// Reads a modulus such as `x^2 - 2`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(&parse_unipoly(text, 'x')?)
    }

    pub fn with_precision(g: &UniPoly, precision: usize) -> Result<Self> {
        let degree = g
            .degree()
            .filter(|d| *d >= 1)
            .ok_or_else(|| Error::Domain("field modulus must have degree at least 1".into()))?;
        if !g.lead().is_one() || g.coeffs().iter().any(|c| !c.is_integer()) {
            return Err(Error::Domain(format!("field modulus {} must be monic with integer coefficients", g.display_in("x"))));
        }
        if g.gcd(&g.derivative()).deg() > 0 {
            return Err(Error::Domain(format!("field modulus {} is not square-free", g.display_in("x"))));
        }
        let discriminant = poly_discriminant(g);
        let witness = find_witness(g, &discriminant);
        let roots = complex_roots(g, precision + 16)?;
        let embeddings = roots.iter().map(|r| r.center.clone()).collect();
        let radii = roots.iter().map(|r| r.radius).collect();
        Ok(NumberField { modulus: g.clone(), degree, witness, discriminant, embeddings, radii, precision })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn witness(&self) -> Option<&Prime> {
        self.witness.as_ref()
    }

    /// `disc(g)`.
    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn is_rational_field(&self) -> bool {
        self.degree == 1
    }

    pub fn embeddings(&self) -> &[CBig] {
        &self.embeddings
    }

    pub fn zero(&self) -> AlgNum {
        AlgNum { coords: vec![Rational::zero(); self.degree] }
    }

    pub fn one(&self) -> AlgNum {
        self.from_rational(&Rational::one())
    }

    pub fn from_rational(&self, q: &Rational) -> AlgNum {
        let mut a = self.zero();
        a.coords[0] = q.clone();
        a
    }

    pub fn from_int(&self, n: i64) -> AlgNum {
        self.from_rational(&Rational::from_integer(n.into()))
    }

    /// The class of `x`.
    pub fn theta(&self) -> AlgNum {
        self.from_poly(&UniPoly::x())
    }

    /// Reduces an arbitrary polynomial in θ modulo `g`.
    pub fn from_poly(&self, p: &UniPoly) -> AlgNum {
        let r = p.div_rem(&self.modulus).1;
        let mut coords = r.into_coeffs();
        coords.resize(self.degree, Rational::zero());
        AlgNum { coords }
    }

    pub fn from_coords(&self, coords: Vec<Rational>) -> AlgNum {
        self.from_poly(&UniPoly::new(coords))
    }

    pub fn to_poly(&self, a: &AlgNum) -> UniPoly {
        UniPoly::new(a.coords.clone())
    }

    pub fn add(&self, a: &AlgNum, b: &AlgNum) -> AlgNum {
        AlgNum { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &AlgNum, b: &AlgNum) -> AlgNum {
        AlgNum { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &AlgNum) -> AlgNum {
        AlgNum { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &AlgNum, q: &Rational) -> AlgNum {
        AlgNum { coords: a.coords.iter().map(|x| x * q).collect() }
    }

    pub fn mul(&self, a: &AlgNum, b: &AlgNum) -> AlgNum {
        let d = self.degree;
        if d == 1 {
            return AlgNum { coords: vec![&a.coords[0] * &b.coords[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let g = self.modulus.coeffs();
        for top in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g[..d].iter().enumerate() {
                if !gj.is_zero() {
                    prod[top - d + j] -= &c * gj;
                }
            }
        }
        prod.truncate(d);
        AlgNum { coords: prod }
    }

    pub fn pow(&self, a: &AlgNum, e: u32) -> AlgNum {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; fails on zero and on zero divisors of a reducible modulus.
    pub fn inv(&self, a: &AlgNum) -> Result<AlgNum> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if self.degree == 1 {
            return Ok(AlgNum { coords: vec![a.coords[0].recip()] });
        }
        let (g, s) = ext_gcd(&self.to_poly(a), &self.modulus);
        if g.deg() > 0 {
            return Err(Error::ZeroDivisor(self.modulus.display_in("x")));
        }
        Ok(self.from_poly(&s.scale(&g.lead().recip())))
    }

    pub fn div(&self, a: &AlgNum, b: &AlgNum) -> Result<AlgNum> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `σ_i(a)` together with an absolute error bound.
    pub fn embed(&self, a: &AlgNum, i: usize) -> (CBig, f64) {
        let theta = &self.embeddings[i];
        let r = self.radii[i];
        let work = self.precision + 16;
        let mut acc = CBig::zero(work);
        for c in a.coords.iter().rev() {
            acc = &(&acc * theta) + &CBig::from_real(real_from_rational(c, work));
        }
        let t = theta.abs().to_f64().value();
        let mut err = 0.0;
        let mut mag = 0.0;
        for (j, c) in a.coords.iter().enumerate() {
            let cf = c.abs().to_f64().unwrap_or(f64::MAX);
            err += cf * ((t + r).powi(j as i32) - t.powi(j as i32)).abs();
            mag += cf * t.powi(j as i32);
        }
        err += mag * (a.coords.len() as f64 + 2.0) * 2f64.powi(-(work as i32 - 4));
        (acc, err)
    }

    /// Coordinates of `a^0, …, a^d` as rows.
    fn power_rows(&self, a: &AlgNum) -> Vec<Vec<Rational>> {
        let mut rows = Vec::with_capacity(self.degree + 1);
        let mut cur = self.one();
        for _ in 0..=self.degree {
            rows.push(cur.coords.clone());
            cur = self.mul(&cur, a);
        }
        rows
    }

    /// Monic minimal polynomial of `a` over Q.
    pub fn min_poly(&self, a: &AlgNum) -> Result<UniPoly> {
        if let Some(q) = a.as_rational() {
            return Ok(UniPoly::new(vec![-q, Rational::one()]));
        }
        let rows = self.power_rows(a);
        for k in 1..=self.degree {
            if let Some(c) = solve_combination(&rows[..k], &rows[k]) {
                let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
                coeffs.push(Rational::one());
                let m = UniPoly::new(coeffs);
                if self.witness.is_none() {
                    self.check_field_like(a, &m)?;
                }
                return Ok(m);
            }
        }
        Err(Error::Internal("powers of an algebra element are independent beyond the degree".into()))
    }

    /// Characteristic polynomial of multiplication by `a`.
    pub fn char_poly(&self, a: &AlgNum) -> UniPoly {
        let d = self.degree;
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.one();
        let theta = self.theta();
        for _ in 0..d {
            cols.push(self.mul(a, &basis).coords);
            basis = self.mul(&basis, &theta);
        }
        let m: Vec<Vec<UniPoly>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let entry = UniPoly::constant(-cols[j][i].clone());
                        if i == j { &entry + &UniPoly::x() } else { entry }
                    })
                    .collect()
            })
            .collect();
        bareiss_det(m)
    }

    /// In a genuine field the characteristic polynomial is a power of the minimal one.
    fn check_field_like(&self, a: &AlgNum, m: &UniPoly) -> Result<()> {
        let k = m.deg();
        if k > 1 && m.coeff(0).is_zero() {
            return Err(Error::ZeroDivisor(self.modulus.display_in("x")));
        }
        let ok = self.degree % k == 0 && self.char_poly(a) == m.pow((self.degree / k) as u32);
        if ok {
            Ok(())
        } else {
            Err(Error::ZeroDivisor(self.modulus.display_in("x")))
        }
    }

    /// Degree over Q of the subfield generated by `gens`, via the closure of their Q-span.
    pub fn subfield_degree(&self, gens: &[AlgNum]) -> usize {
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut queue = vec![self.one()];
        let mut members: Vec<AlgNum> = Vec::new();
        while let Some(x) = queue.pop() {
            if !insert_reduced(&mut basis, &mut pivots, x.coords.clone()) {
                continue;
            }
            for g in gens {
                queue.push(self.mul(&x, g));
            }
            for m in &members {
                queue.push(self.mul(&x, m));
            }
            members.push(x);
            if basis.len() == self.degree {
                break;
            }
        }
        basis.len()
    }
}

/// Adds `v` to an echelon basis if independent; returns whether it was added.
fn insert_reduced(basis: &mut Vec<Vec<Rational>>, pivots: &mut Vec<usize>, mut v: Vec<Rational>) -> bool {
    for (b, &p) in basis.iter().zip(pivots.iter()) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &f * y;
            }
        }
    }
    match v.iter().position(|x| !x.is_zero()) {
        None => false,
        Some(p) => {
            let inv = v[p].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for b in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push(v);
            pivots.push(p);
            true
        }
    }
}

/// Solves `Σ c_j rows[j] = target` over Q, if possible.
fn solve_combination(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let d = target.len();
    // Augmented system with unknowns c_0..c_{k-1}: one equation per coordinate.
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = rows.iter().map(|r| r[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..d).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..d {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); k];
    for (i, &c) in pivot_cols.iter().enumerate() {
        sol[c] = m[i][k].clone();
    }
    Some(sol)
}

/// `(gcd, s)` with `s·a ≡ gcd (mod b)`.
fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

fn poly_discriminant(g: &UniPoly) -> BigInt {
    let as_bi = BiPoly::from_w_coeffs(
        &g.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect::<Vec<_>>(),
    );
    if g.deg() == 1 {
        return BigInt::one();
    }
    discriminant_w(&as_bi).expect("degree ≥ 2").coeff(0).to_integer()
}

fn find_witness(g: &UniPoly, disc: &BigInt) -> Option<Prime> {
    if g.deg() == 1 {
        return Prime::from_u64(2).ok();
    }
    let ints: Vec<BigInt> = g.coeffs().iter().map(|c| c.to_integer()).collect();
    primes_up_to(10_000)
        .into_iter()
        .filter(|&p| !(disc % BigInt::from(p)).is_zero())
        .take(WITNESS_ATTEMPTS)
        .find(|&p| {
            let pb = BigInt::from(p);
            let reduced: Vec<u64> = ints
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
                .collect();
            is_irreducible_mod_p(&reduced, p)
        })
        .map(|p| Prime::new_unchecked(BigUint::from(p)))
}
