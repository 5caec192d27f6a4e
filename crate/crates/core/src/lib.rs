//! Exact expansion of algebraic Puiseux series over Q together with explicit,
//! place-by-place Eisenstein bounds on their coefficients.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: rationals, places of Q, valuations, exact and approximate logarithms.
//! * [`poly`]: uni/bivariate polynomials over Q, the text reader, resultants,
//!   normalizations, heights and certified complex roots.
//! * [`field`]: arithmetic in a declared number field Q(θ) and heights of its elements.
//! * [`puiseux`]: Newton lifting and Newton–Puiseux branch enumeration.
//! * [`eisenstein`]: local and global Eisenstein divisors, the height inequalities they
//!   satisfy, and a harness that checks the coefficient bounds term by term.
//! * [`disc`]: discriminant bounds for the fields generated by series coefficients.
//! * [`lemmas`]: checkers for the auxiliary root, translation, resultant and Mahler bounds.

pub mod arith;
pub mod disc;
pub mod eisenstein;
mod error;
pub mod field;
pub mod lemmas;
pub mod poly;
pub mod puiseux;
pub mod report;

pub use arith::{ExactLog, LogReal, Place, Prime, Rational};
pub use error::{Error, ParseError, Result};
pub use field::{AlgNum, NumberField};
pub use poly::{BiPoly, NormalizationRecord, UniPoly};
pub use puiseux::{BranchSet, PuiseuxSeries};
