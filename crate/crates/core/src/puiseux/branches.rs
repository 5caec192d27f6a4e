use std::sync::Arc;

use crate::arith::Rational;
use crate::field::{lower_convex_hull, roots_in_field, AlgNum, FPoly, NumberField};
use crate::poly::{resultant_with_derivative, BiPoly};
use crate::{Error, Result};

use super::lift::{newton_lift, residue_check, spread, to_fpolys};
use super::{BranchSet, PuiseuxSeries, UnrealizedBranch};

/// One node of the Newton–Puiseux tree: `P(t^E, Σ prefix + t^offset·w′) = t^· G(t, w′)`.
struct Node {
    g: Vec<FPoly>,
    prefix: Vec<(i64, AlgNum)>,
    offset: i64,
    e: u32,
    level: usize,
}

struct Walker<'a> {
    p: &'a BiPoly,
    field: Arc<NumberField>,
    truncation: i64,
    depth_limit: usize,
    out: BranchSet,
}

/// Every branch of `P(z, w) = 0` at `z = 0` whose coefficients lie in `field`, each to index `K`.
///
/// Cycles of ramified branches are represented once. Groups of roots whose characteristic
/// coefficients fall outside the field are reported in [`BranchSet::unrealized`].
pub fn puiseux_branches(p: &BiPoly, field: Arc<NumberField>, truncation: i64) -> Result<BranchSet> {
    if p.deg_w() == 0 {
        return Err(Error::Domain("P has no w-dependence".into()));
    }
    if truncation < 0 {
        return Err(Error::Domain("truncation must be non-negative".into()));
    }
    let stripped = strip_z(p);
    let r = resultant_with_derivative(&stripped)?;
    if r.is_zero() {
        return Err(Error::NotSeparable);
    }
    let n = stripped.deg_w() as usize;
    let mut walker = Walker {
        p: &stripped,
        field: field.clone(),
        truncation,
        depth_limit: n * (2 * r.deg() + 1),
        out: BranchSet::default(),
    };
    let root = Node { g: to_fpolys(&field, &stripped), prefix: Vec::new(), offset: 0, e: 1, level: 0 };
    walker.visit(root)?;
    let mut out = walker.out;
    out.complete = out.unrealized.is_empty() && out.realized_roots() == n;
    if out.unrealized.is_empty() && out.realized_roots() != n {
        return Err(Error::Internal(format!(
            "branch count mismatch: {} roots realized for deg_w P = {}",
            out.realized_roots(),
            n
        )));
    }
    Ok(out)
}

fn strip_z(p: &BiPoly) -> BiPoly {
    let k = p.z_order();
    if k == 0 {
        return p.clone();
    }
    BiPoly::from_terms(p.terms().map(|(&(i, j), c)| ((i - k, j), c.clone())))
}

/// `q` multiplied by `t^s`; a negative `s` removes leading zero coefficients.
fn shift(field: &NumberField, q: &FPoly, s: i64) -> FPoly {
    if q.is_zero() || s == 0 {
        return q.clone();
    }
    if s > 0 {
        let mut v = vec![field.zero(); s as usize];
        v.extend(q.coeffs().iter().cloned());
        FPoly::new(v)
    } else {
        debug_assert!(q.ord().unwrap_or(0) as i64 >= -s);
        FPoly::new(q.coeffs()[(-s) as usize..].to_vec())
    }
}

/// `t^{−M} G(t^q, t^p (c + w′))` with `M` the smallest resulting `t`-order.
fn substitute(field: &NumberField, g: &[FPoly], p: i64, q: u32, c: &AlgNum) -> Vec<FPoly> {
    let m = g
        .iter()
        .enumerate()
        .filter_map(|(j, gj)| gj.ord().map(|o| q as i64 * o as i64 + p * j as i64))
        .min()
        .unwrap_or(0);
    let h: Vec<FPoly> = g
        .iter()
        .enumerate()
        .map(|(j, gj)| shift(field, &spread(field, gj, q as usize), p * j as i64 - m))
        .collect();
    // Horner in w′: acc ← acc·(c + w′) + h_j
    let mut acc: Vec<FPoly> = Vec::new();
    for hj in h.iter().rev() {
        let mut next = vec![FPoly::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] = next[i].add(field, &a.scale(field, c));
            next[i + 1] = next[i + 1].add(field, a);
        }
        next[0] = next[0].add(field, hj);
        acc = next;
    }
    while acc.last().is_some_and(|x| x.is_zero()) {
        acc.pop();
    }
    acc
}

/// Multiplicity of `c` as a root of `phi`.
fn multiplicity(field: &NumberField, phi: &FPoly, c: &AlgNum) -> Result<usize> {
    let lin = FPoly::new(vec![field.neg(c), field.one()]);
    let mut cur = phi.clone();
    let mut k = 0;
    loop {
        let (quo, rem) = cur.div_rem(field, &lin)?;
        if !rem.is_zero() {
            return Ok(k);
        }
        k += 1;
        cur = quo;
    }
}

impl Walker<'_> {
    fn visit(&mut self, mut node: Node) -> Result<()> {
        if node.level > self.depth_limit {
            return Err(Error::Internal(format!(
                "Newton–Puiseux recursion exceeded the depth bound {}",
                self.depth_limit
            )));
        }
        let field = self.field.clone();
        if node.g.first().is_some_and(|g0| g0.is_zero()) {
            self.emit(&node, None)?;
            node.g.remove(0);
        }
        if node.g.len() <= 1 {
            return Ok(());
        }
        let pts: Vec<(usize, usize)> = node
            .g
            .iter()
            .enumerate()
            .filter_map(|(j, gj)| gj.ord().map(|o| (j, o)))
            .collect();
        let pts: Vec<(usize, usize)> = if node.level == 0 {
            pts
        } else {
            match pts.iter().position(|&(_, o)| o == 0) {
                Some(r) => pts[..=r].to_vec(),
                None => return Err(Error::Internal("no unit coefficient at a Puiseux node".into())),
            }
        };
        if node.level > 0 && pts.last().map(|x| x.0) == Some(1) {
            let lifted = newton_lift(&field, &node.g, &field.zero(), (self.truncation - node.offset + 1).max(1) as usize)?;
            return self.emit(&node, Some(lifted));
        }
        let hull_input: Vec<(i64, Rational)> =
            pts.iter().map(|&(j, o)| (j as i64, Rational::from_integer((o as i64).into()))).collect();
        let hull = lower_convex_hull(&hull_input);
        for edge in hull.windows(2) {
            let (j1, o1) = (edge[0].0, edge[0].1.to_integer());
            let (j2, o2) = (edge[1].0, edge[1].1.to_integer());
            self.edge(&node, j1 as usize, &o1, j2 as usize, &o2)?;
        }
        Ok(())
    }

    fn edge(
        &mut self,
        node: &Node,
        j1: usize,
        o1: &num_bigint::BigInt,
        j2: usize,
        o2: &num_bigint::BigInt,
    ) -> Result<()> {
        let field = self.field.clone();
        let gamma = Rational::new(o1 - o2, ((j2 - j1) as i64).into());
        let p: i64 = gamma.numer().try_into().map_err(|_| Error::Unsupported("slope too large".into()))?;
        let q: u32 = gamma.denom().try_into().map_err(|_| Error::Unsupported("slope too large".into()))?;
        let o1: i64 = o1.try_into().map_err(|_| Error::Unsupported("order too large".into()))?;
        let level_value = q as i64 * o1 + p * j1 as i64;
        let mut phi = vec![field.zero(); j2 - j1 + 1];
        for (j, gj) in node.g.iter().enumerate().take(j2 + 1).skip(j1) {
            if let Some(o) = gj.ord() {
                if q as i64 * o as i64 + p * j as i64 == level_value {
                    phi[j - j1] = gj.coeffs()[o].clone();
                }
            }
        }
        let phi = FPoly::new(phi);
        let found = roots_in_field(&phi, &field)?;
        let mut groups: Vec<(AlgNum, AlgNum)> = Vec::new();
        let mut accounted = 0usize;
        for c in found.roots.iter().filter(|c| !c.is_zero()) {
            let u = field.pow(c, q);
            if groups.iter().any(|(v, _)| *v == u) {
                continue;
            }
            accounted += q as usize * multiplicity(&field, &phi, c)?;
            groups.push((u, c.clone()));
        }
        let span = j2 - j1;
        if accounted < span {
            let e_here = node.e * q;
            let count = node.e as usize * (span - accounted);
            self.out.unrealized.push(UnrealizedBranch {
                ramification: e_here,
                ramification_bound: count as u32,
                exponent: Rational::new((node.offset * q as i64 + p).into(), (e_here as i64).into()),
                char_poly: phi.display_in("c"),
                root_count: count,
            });
        }
        for (_, c) in groups {
            let g = substitute(&field, &node.g, p, q, &c);
            let mut prefix: Vec<(i64, AlgNum)> =
                node.prefix.iter().map(|(k, a)| (k * q as i64, a.clone())).collect();
            let offset = node.offset * q as i64 + p;
            prefix.push((offset, c));
            self.visit(Node { g, prefix, offset, e: node.e * q, level: node.level + 1 })?;
        }
        Ok(())
    }

    fn emit(&mut self, node: &Node, tail: Option<FPoly>) -> Result<()> {
        let field = self.field.clone();
        let mut terms = node.prefix.clone();
        let exact = tail.is_none() && node.prefix.iter().all(|(k, _)| *k <= self.truncation);
        if let Some(t) = &tail {
            for (i, c) in t.coeffs().iter().enumerate() {
                terms.push((node.offset + i as i64, c.clone()));
            }
        }
        let generators_until = node.prefix.last().map_or(0, |x| x.0);
        let series = PuiseuxSeries::from_terms(field, node.e, &terms, self.truncation, exact, generators_until);
        residue_check(self.p, &series)?;
        self.out.branches.push(series);
        Ok(())
    }
}
