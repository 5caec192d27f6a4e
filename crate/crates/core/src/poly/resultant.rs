use num_traits::Signed;

use super::uni::primitive_integer_coeffs;
use super::{BiPoly, UniPoly};
use crate::arith::Rational;
use crate::{Error, Result};

/// Determinant of a square matrix over Q[z] by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut negate = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Sylvester matrix of `a`, `b` given by their coefficient lists in `w` (lowest first).
fn sylvester(a: &[UniPoly], b: &[UniPoly]) -> Vec<Vec<UniPoly>> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let size = da + db;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..db {
        let mut row = vec![UniPoly::zero(); size];
        for (t, c) in a.iter().rev().enumerate() {
            row[shift + t] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..da {
        let mut row = vec![UniPoly::zero(); size];
        for (t, c) in b.iter().rev().enumerate() {
            row[shift + t] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res_w(P, Q) ∈ Q[z]`, the determinant of the Sylvester matrix (rows of `P` first).
pub fn resultant_w(p: &BiPoly, q: &BiPoly) -> Result<UniPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("resultant with the zero polynomial".into()));
    }
    let a = p.w_coeffs();
    let b = q.w_coeffs();
    if a.len() == 1 {
        return Ok(a[0].pow(b.len() as u32 - 1));
    }
    if b.len() == 1 {
        return Ok(b[0].pow(a.len() as u32 - 1));
    }
    Ok(bareiss_det(sylvester(&a, &b)))
}

/// `R_P(z) = Res_w(P, P'_w)`.
pub fn resultant_with_derivative(p: &BiPoly) -> Result<UniPoly> {
    if p.deg_w() == 0 {
        return Err(Error::Domain("P has no w-dependence".into()));
    }
    resultant_w(p, &p.derivative_w())
}

/// `D(z) = (−1)^{n(n−1)/2} Res_w(P, P'_w) / p_n(z)`.
pub fn discriminant_w(p: &BiPoly) -> Result<UniPoly> {
    let n = p.deg_w() as usize;
    let r = resultant_with_derivative(p)?;
    let d = r.exact_div(&p.lead_w()).ok_or_else(|| {
        Error::Internal("resultant not divisible by the leading coefficient".into())
    })?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -&d } else { d })
}

fn content(cs: &[UniPoly]) -> UniPoly {
    cs.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive(cs: &[UniPoly]) -> Vec<UniPoly> {
    let c = content(cs);
    if c.is_zero() {
        return cs.to_vec();
    }
    cs.iter().map(|x| x.exact_div(&c).expect("content divides")).collect()
}

fn trim(mut v: Vec<UniPoly>) -> Vec<UniPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` in Q[z][w].
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let mut next: Vec<UniPoly> = r.iter().map(|c| c * &lb).collect();
        for (j, bc) in b.iter().enumerate() {
            next[dr - db + j] = &next[dr - db + j] - &(bc * &lr);
        }
        r = trim(next);
    }
    r
}

/// Primitive gcd over Q(z)[w] of two polynomials given by `w`-coefficient lists.
fn gcd_w(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(&r) };
    }
    x
}

/// Exact quotient in Q[z][w]; the division must leave no remainder.
fn exact_div_w(a: &[UniPoly], b: &[UniPoly]) -> Option<Vec<UniPoly>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let mut r = a.to_vec();
    let mut q = vec![UniPoly::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let t = r[i + db].exact_div(&b[db])?;
        for (j, bc) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &(&t * bc);
        }
        q[i] = t;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

/// Divides out the repeated `w`-factors of `P`, then scales to coprime integer
/// coefficients with a positive leading term in graded order.
pub fn squarefree_part_w(p: &BiPoly) -> Result<BiPoly> {
    if p.deg_w() == 0 {
        return Err(Error::Domain("squarefree part needs deg_w P ≥ 1".into()));
    }
    let a = p.w_coeffs();
    let da = p.derivative_w().w_coeffs();
    let g = gcd_w(&a, &da);
    let q = if g.len() <= 1 {
        a
    } else {
        exact_div_w(&a, &g).ok_or_else(|| Error::Internal("gcd does not divide P".into()))?
    };
    Ok(integer_normalize(&BiPoly::from_w_coeffs(&q)))
}

/// Scales a polynomial to coprime integer coefficients with a positive leading
/// coefficient in the canonical term order.
pub fn integer_normalize(p: &BiPoly) -> BiPoly {
    let terms = p.graded_terms();
    let coeffs: Vec<Rational> = terms.iter().map(|(_, c)| c.clone()).collect();
    let ints = primitive_integer_coeffs(&coeffs);
    let flip = ints.first().is_some_and(|c| c.is_negative());
    BiPoly::from_terms(terms.into_iter().zip(ints).map(|((k, _), c)| {
        let c = Rational::from_integer(c);
        (k, if flip { -c } else { c })
    }))
}

/// True when `Res_w(P, P'_w) ≠ 0`.
pub fn is_w_separable(p: &BiPoly) -> Result<bool> {
    Ok(!resultant_with_derivative(p)?.is_zero())
}
