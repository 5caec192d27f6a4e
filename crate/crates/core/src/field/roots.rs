use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{AlgNum, FPoly, NumberField};
use crate::arith::{real_from_f64, CBig, Rational, Real};
use crate::poly::squarefree_roots;
use crate::{Error, Result};

/// Highest precision used when the reconstructed coordinates are too large to round safely.
const MAX_RECONSTRUCTION_BITS: usize = 2048;
/// Upper limit on the number of embedding-wise root combinations examined.
const MAX_COMBINATIONS: usize = 200_000;

/// Roots of a polynomial over `F` that lie in `F`.
#[derive(Clone, Debug, Default)]
pub struct FieldRoots {
    /// Exactly verified roots, without repetition.
    pub roots: Vec<AlgNum>,
    /// Approximate values (under the first embedding) of roots not found in `F`.
    pub unresolved: Vec<Complex64>,
}

/// All roots of `h` in `F`.
///
/// Each root is located numerically under every embedding, its power-basis coordinates
/// are recovered by inverting the embedded Vandermonde system and rounding against a
/// proven denominator bound, and the candidate is then checked by exact substitution.
/// Returned roots are therefore always genuine; roots that could not be reconstructed
/// are listed as `unresolved`.
pub fn roots_in_field(h: &FPoly, field: &NumberField) -> Result<FieldRoots> {
    if h.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    if h.deg() == 0 {
        return Ok(FieldRoots::default());
    }
    let s = h.squarefree_part(field)?;
    if s.deg() == 1 {
        let root = field.neg(&s.coeffs()[0]);
        return Ok(FieldRoots { roots: vec![root], unresolved: Vec::new() });
    }
    let den = s.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator()));
    let bound = den * field.discriminant().abs();
    let mut current = field.clone();
    loop {
        let attempt = reconstruct(&s, &current, field, &bound)?;
        let prec = current.precision();
        if attempt.complete || !attempt.needs_precision || prec * 2 > MAX_RECONSTRUCTION_BITS {
            return Ok(attempt.result);
        }
        current = NumberField::with_precision(field.modulus(), prec * 2)?;
    }
}

struct Attempt {
    result: FieldRoots,
    complete: bool,
    needs_precision: bool,
}

fn reconstruct(s: &FPoly, work: &NumberField, field: &NumberField, bound: &BigInt) -> Result<Attempt> {
    let d = work.degree();
    let k = s.deg();
    let prec = work.precision();
    let mut per_embedding = Vec::with_capacity(d);
    for i in 0..d {
        let cs = s.embed(work, i);
        let roots: Vec<CBig> = squarefree_roots(&cs, prec / 2)?.into_iter().map(|r| r.0).collect();
        per_embedding.push(roots);
    }
    let thetas: Vec<Complex64> = work.embeddings().iter().map(|t| t.to_c64()).collect();
    let scale = thetas.iter().map(|t| t.norm()).fold(1.0, f64::max);
    let real_tol = 1e-9 * scale;
    // partner[i] = Some(j) for the complex-conjugate embedding, i itself when real.
    let partner: Vec<usize> = (0..d)
        .map(|i| {
            (0..d)
                .min_by(|&a, &b| {
                    let da = (thetas[a] - thetas[i].conj()).norm();
                    let db = (thetas[b] - thetas[i].conj()).norm();
                    da.partial_cmp(&db).expect("finite")
                })
                .expect("d ≥ 1")
        })
        .collect();
    let vinv = vandermonde_inverse(work.embeddings(), prec);
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(d);
    for i in 0..d {
        let opts: Vec<usize> = if partner[i] == i {
            (0..k)
                .filter(|&r| per_embedding[i][r].to_c64().im.abs() <= real_tol * (1.0 + per_embedding[i][r].to_c64().norm()))
                .collect()
        } else {
            (0..k).collect()
        };
        choices.push(opts);
    }
    let mut found: Vec<AlgNum> = Vec::new();
    let mut needs_precision = false;
    let mut tuple = vec![usize::MAX; d];
    let mut visited = 0usize;
    // Depth-first enumeration; a complex embedding whose partner is already fixed
    // is forced to the conjugate root.
    enumerate(
        0,
        &mut tuple,
        &choices,
        &partner,
        &per_embedding,
        &mut visited,
        &mut |tuple: &[usize]| {
            let b: Vec<CBig> = tuple.iter().enumerate().map(|(i, &r)| per_embedding[i][r].clone()).collect();
            match candidate(&vinv, &b, bound, prec, field) {
                Candidate::Root(beta) => {
                    if s.eval(field, &beta).is_zero() && !found.contains(&beta) {
                        found.push(beta);
                    }
                }
                Candidate::TooLarge => needs_precision = true,
                Candidate::NotInField => {}
            }
        },
    );
    let complete = found.len() == k;
    let mut unresolved = Vec::new();
    if !complete {
        let realized: Vec<Complex64> = found.iter().map(|b| field.embed(b, 0).0.to_c64()).collect();
        for r in &per_embedding[0] {
            let z = r.to_c64();
            if !realized.iter().any(|x| (x - z).norm() <= 1e-9 * (1.0 + z.norm())) {
                unresolved.push(z);
            }
        }
    }
    Ok(Attempt {
        result: FieldRoots { roots: found, unresolved },
        complete,
        needs_precision: needs_precision && visited < MAX_COMBINATIONS,
    })
}

fn enumerate<F: FnMut(&[usize])>(
    i: usize,
    tuple: &mut Vec<usize>,
    choices: &[Vec<usize>],
    partner: &[usize],
    roots: &[Vec<CBig>],
    visited: &mut usize,
    visit: &mut F,
) {
    if *visited >= MAX_COMBINATIONS {
        return;
    }
    if i == tuple.len() {
        *visited += 1;
        visit(tuple);
        return;
    }
    let j = partner[i];
    if j < i {
        let target = roots[j][tuple[j]].to_c64().conj();
        let best = (0..roots[i].len())
            .min_by(|&a, &b| {
                let da = (roots[i][a].to_c64() - target).norm();
                let db = (roots[i][b].to_c64() - target).norm();
                da.partial_cmp(&db).expect("finite")
            })
            .expect("non-empty");
        tuple[i] = best;
        enumerate(i + 1, tuple, choices, partner, roots, visited, visit);
        return;
    }
    for &r in &choices[i] {
        tuple[i] = r;
        enumerate(i + 1, tuple, choices, partner, roots, visited, visit);
    }
}

enum Candidate {
    Root(AlgNum),
    NotInField,
    /// Real coordinates too large to round reliably at this precision.
    TooLarge,
}

fn candidate(vinv: &[Vec<CBig>], b: &[CBig], bound: &BigInt, prec: usize, field: &NumberField) -> Candidate {
    let d = b.len();
    let n_real = crate::arith::real_from_bigint(bound, prec);
    let mut coords = Vec::with_capacity(d);
    let mut too_large = false;
    for row in vinv.iter().take(d) {
        let mut acc = CBig::zero(prec);
        for (v, x) in row.iter().zip(b) {
            acc = &acc + &(v * x);
        }
        let c = acc.to_c64();
        if c.im.abs() > 1e-6 * (1.0 + c.re.abs()) {
            return Candidate::NotInField;
        }
        let scaled: Real = &acc.re * &n_real;
        let sf = scaled.to_f64().value();
        if sf.abs() > 2f64.powi((prec / 2) as i32) {
            too_large = true;
        }
        let rounded = round_real(&scaled);
        let diff = (&scaled - &crate::arith::real_from_bigint(&rounded, prec)).to_f64().value();
        if diff.abs() > 1e-3 {
            return if too_large { Candidate::TooLarge } else { Candidate::NotInField };
        }
        coords.push(Rational::new(rounded, bound.clone()));
    }
    Candidate::Root(field.from_coords(coords))
}

fn round_real(x: &Real) -> BigInt {
    let half = real_from_f64(0.5, x.precision().max(64));
    let shifted = if x.sign() == dashu_int::Sign::Negative { x - &half } else { x + &half };
    let t = shifted.trunc();
    let (sign, mag) = t.to_int().value().into_parts();
    let bytes = mag.to_le_bytes();
    let m = BigInt::from_bytes_le(num_bigint::Sign::Plus, &bytes);
    if sign == dashu_int::Sign::Negative { -m } else { m }
}

/// Inverse of `V_{ij} = θ_i^j` by Gauss–Jordan elimination with partial pivoting.
fn vandermonde_inverse(thetas: &[CBig], prec: usize) -> Vec<Vec<CBig>> {
    let d = thetas.len();
    let one = CBig::from_real(Real::ONE.with_precision(prec).value());
    let zero = CBig::zero(prec);
    let mut a: Vec<Vec<CBig>> = thetas
        .iter()
        .map(|t| {
            let t = t.with_precision(prec);
            let mut row = Vec::with_capacity(2 * d);
            let mut p = one.clone();
            for _ in 0..d {
                row.push(p.clone());
                p = &p * &t;
            }
            row
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..d {
            row.push(if i == j { one.clone() } else { zero.clone() });
        }
    }
    for c in 0..d {
        let p = (c..d)
            .max_by(|&x, &y| {
                a[x][c].abs().partial_cmp(&a[y][c].abs()).expect("finite")
            })
            .expect("non-empty");
        a.swap(c, p);
        let inv = one.div(&a[c][c]);
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    // a = [I | V^{-1}]; rows of V^{-1} map embedded values to coordinates.
    a.into_iter().map(|row| row[d..].to_vec()).collect()
}
