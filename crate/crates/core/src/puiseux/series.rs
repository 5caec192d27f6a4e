use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::field::{AlgNum, FPoly, NumberField};

/// A truncated branch `f(z) = Σ_{k=κ}^{K} a_k z^{k/e}` with coefficients in a number field.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    pub field: Arc<NumberField>,
    /// Ramification index.
    pub e: u32,
    /// Index of the first non-zero coefficient (`0` for the zero series).
    pub kappa: i64,
    /// `a_κ, …, a_K`.
    pub coeffs: Vec<AlgNum>,
    /// Largest stored index `K`.
    pub truncation: i64,
    /// The stored terms are the whole branch, not just a truncation.
    pub exact: bool,
    /// Index of the last coefficient introduced by a characteristic equation. Every
    /// later coefficient lies in the field generated by `a_κ, …, a_{generators_until}`.
    pub generators_until: i64,
}

impl PuiseuxSeries {
    pub fn coeff(&self, k: i64) -> AlgNum {
        if k < self.kappa || k > self.truncation {
            return self.field.zero();
        }
        self.coeffs
            .get((k - self.kappa) as usize)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `(k, a_k)` over the stored range.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, &AlgNum)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.kappa + i as i64, c))
    }

    /// Coefficients as rationals, when all of them are rational.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    /// Writes `f = t^m v(t)` with `z = t^e`, `m = min(κ, 0)` and `v` a polynomial holding
    /// every stored term.
    pub(crate) fn laurent_shifted(&self) -> (i64, FPoly) {
        let m = self.kappa.min(0);
        let mut v = vec![self.field.zero(); (self.kappa - m) as usize];
        v.extend(self.coeffs.iter().cloned());
        (m, FPoly::new(v))
    }

    /// Builds a series from `(t-exponent, coefficient)` data, enforcing a non-zero leading term.
    pub(crate) fn from_terms(
        field: Arc<NumberField>,
        e: u32,
        terms: &[(i64, AlgNum)],
        truncation: i64,
        exact: bool,
        generators_until: i64,
    ) -> Self {
        let first = terms.iter().filter(|(k, c)| !c.is_zero() && *k <= truncation).map(|(k, _)| *k).min();
        let kappa = match first {
            Some(k) => k,
            None => terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, _)| *k)
                .min()
                .unwrap_or(0),
        };
        let len = (truncation - kappa + 1).max(0) as usize;
        let mut coeffs = vec![field.zero(); len];
        for (k, c) in terms {
            if *k >= kappa && *k <= truncation {
                let slot = &mut coeffs[(*k - kappa) as usize];
                *slot = field.add(slot, c);
            }
        }
        PuiseuxSeries { field, e, kappa, coeffs, truncation, exact, generators_until }
    }

    /// The terms as text, e.g. `z^(-1) - 1 - z - 2*z^2 + …`.
    pub fn display_terms(&self, max_terms: usize) -> String {
        let mut parts = Vec::new();
        let mut shown = 0;
        for (k, c) in self.indexed() {
            if c.is_zero() {
                continue;
            }
            if shown == max_terms {
                parts.push("…".to_string());
                break;
            }
            shown += 1;
            let exp = Rational::new(k.into(), (self.e as i64).into());
            let mono = if exp.is_zero() {
                String::new()
            } else if exp == Rational::from_integer(1.into()) {
                "z".to_string()
            } else if exp.is_integer() && k > 0 {
                format!("z^{}", exp)
            } else {
                format!("z^({})", exp)
            };
            let cs = c.to_string();
            let simple = !cs.contains(' ');
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs.clone(),
                (false, "1") => mono,
                (false, "-1") => format!("-{}", mono),
                (false, _) if simple => format!("{}*{}", cs, mono),
                _ => format!("({})*{}", cs, mono),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        if !self.exact {
            let next = Rational::new((self.truncation + 1).into(), (self.e as i64).into());
            if next.is_integer() && next > Rational::zero() {
                out.push_str(&format!(" + O(z^{})", next));
            } else {
                out.push_str(&format!(" + O(z^({}))", next));
            }
        }
        out
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_terms(8))
    }
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<(i64, String)> = self.indexed().map(|(k, c)| (k, c.to_string())).collect();
        let mut st = s.serialize_struct("PuiseuxSeries", 8)?;
        st.serialize_field("field", &self.field.modulus().display_in("x"))?;
        st.serialize_field("e", &self.e)?;
        st.serialize_field("kappa", &self.kappa)?;
        st.serialize_field("truncation", &self.truncation)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("generators_until", &self.generators_until)?;
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("display", &self.display_terms(8))?;
        st.end()
    }
}

/// A group of branches whose characteristic roots do not lie in the declared field.
#[derive(Clone, Debug, Serialize)]
pub struct UnrealizedBranch {
    /// Ramification accumulated up to and including the failing edge; a lower bound for
    /// the ramification index of every cycle in the group.
    pub ramification: u32,
    /// Upper bound for those ramification indices (a cycle cannot exceed its group).
    pub ramification_bound: u32,
    /// Exponent (in powers of `z`) of the term whose coefficient is missing.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub exponent: Rational,
    /// The characteristic polynomial, in the variable `c`.
    pub char_poly: String,
    /// Number of roots `w` of `P` in this group.
    pub root_count: usize,
}

/// All branches of `P(z, w) = 0` at `z = 0` realized over the declared field.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BranchSet {
    /// One representative per ramification cycle.
    pub branches: Vec<PuiseuxSeries>,
    pub unrealized: Vec<UnrealizedBranch>,
    /// Every root is accounted for by a realized branch.
    pub complete: bool,
}

impl BranchSet {
    /// An upper bound for `E = max e_i`; exact when the set is complete.
    pub fn max_ramification(&self) -> u32 {
        self.branches
            .iter()
            .map(|b| b.e)
            .chain(self.unrealized.iter().map(|u| u.ramification_bound))
            .max()
            .unwrap_or(1)
    }

    /// `Σ e_i` over the realized cycles.
    pub fn realized_roots(&self) -> usize {
        self.branches.iter().map(|b| b.e as usize).sum()
    }
}
