use num_traits::Zero;
use serde::Serialize;

use crate::arith::{rat_valuation, Prime, Rational};
use crate::poly::UniPoly;
use crate::{Error, Result};

/// Lower convex hull of points `(x, y)`; returns its vertices from left to right.
/// Points are deduplicated by `x` keeping the smallest `y`.
pub fn lower_convex_hull(points: &[(i64, Rational)]) -> Vec<(i64, Rational)> {
    let mut pts: Vec<(i64, Rational)> = points.to_vec();
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0);
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // Drop b when it lies on or above the segment from a to p.
            let lhs = (&b.1 - &a.1) * Rational::from_integer((p.0 - a.0).into());
            let rhs = (&p.1 - &a.1) * Rational::from_integer((b.0 - a.0).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Slopes and horizontal lengths of the edges of a hull.
pub fn hull_slopes(hull: &[(i64, Rational)]) -> Vec<(Rational, usize)> {
    hull.windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            ((&w[1].1 - &w[0].1) / Rational::from_integer(len.into()), len as usize)
        })
        .collect()
}

/// The `p`-adic Newton polygon of a polynomial over Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    #[serde(serialize_with = "ser_vertices")]
    pub vertices: Vec<(usize, Rational)>,
    #[serde(serialize_with = "ser_slopes")]
    pub slopes: Vec<(Rational, usize)>,
}

fn ser_vertices<S: serde::Serializer>(v: &[(usize, Rational)], s: S) -> Result<S::Ok, S::Error> {
    let out: Vec<(usize, String)> = v.iter().map(|(i, q)| (*i, q.to_string())).collect();
    out.serialize(s)
}

fn ser_slopes<S: serde::Serializer>(v: &[(Rational, usize)], s: S) -> Result<S::Ok, S::Error> {
    let out: Vec<(String, usize)> = v.iter().map(|(q, l)| (q.to_string(), *l)).collect();
    out.serialize(s)
}

impl NewtonPolygon {
    /// `(valuation, count)` for the non-zero roots: the negatives of the slopes.
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        self.slopes.iter().map(|(s, l)| (-s.clone(), *l)).collect()
    }

    /// Largest slope, i.e. `−min v_p(root)`; `None` for a monomial.
    pub fn max_slope(&self) -> Option<&Rational> {
        self.slopes.last().map(|(s, _)| s)
    }
}

/// Lower hull of `(i, v_p(c_i))` over the non-zero coefficients of `h`.
pub fn newton_polygon_padic(h: &UniPoly, p: &Prime) -> Result<NewtonPolygon> {
    if h.is_zero() {
        return Err(Error::Domain("Newton polygon of the zero polynomial".into()));
    }
    let pts: Vec<(i64, Rational)> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Ok((i as i64, Rational::from_integer(rat_valuation(c, p)?.into()))))
        .collect::<Result<_>>()?;
    let hull = lower_convex_hull(&pts);
    let slopes = hull_slopes(&hull);
    Ok(NewtonPolygon {
        vertices: hull.into_iter().map(|(i, v)| (i as usize, v)).collect(),
        slopes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn two() -> Prime {
        Prime::from_u64(2).unwrap()
    }

    #[test]
    fn examples() {
        let np = newton_polygon_padic(&UniPoly::from_ints(&[-2, 0, 1]), &two()).unwrap();
        assert_eq!(np.slopes, vec![(q(-1, 2), 2)]);
        assert_eq!(np.root_valuations(), vec![(q(1, 2), 2)]);
        let np = newton_polygon_padic(&UniPoly::from_ints(&[-4, 1]), &two()).unwrap();
        assert_eq!(np.slopes, vec![(q(-2, 1), 1)]);
        let np = newton_polygon_padic(&UniPoly::from_ints(&[-1, 0, 2]), &two()).unwrap();
        assert_eq!(np.slopes, vec![(q(1, 2), 2)]);
    }

    #[test]
    fn hull_is_convex_and_spans() {
        // 8 + x + 4x^2 + x^3 at p = 2: points (0,3),(1,0),(2,2),(3,0).
        let np = newton_polygon_padic(&UniPoly::from_ints(&[8, 1, 4, 1]), &two()).unwrap();
        assert_eq!(np.slopes, vec![(q(-3, 1), 1), (q(0, 1), 2)]);
        let total: usize = np.slopes.iter().map(|s| s.1).sum();
        assert_eq!(total, 3);
        assert!(np.slopes.windows(2).all(|w| w[0].0 < w[1].0));
    }
}
