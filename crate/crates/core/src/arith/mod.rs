//! Exact rationals, places of Q, p-adic valuations and log-scale reals.

mod complex;
mod exact_log;
mod log_real;
mod place;
pub mod primes;
mod rational;

pub use complex::CBig;
pub use exact_log::ExactLog;
pub use log_real::{
    ln_bigint, ln_rational, real_from_bigint, real_from_f64, real_from_rational, real_to_f64,
    format_real, Comparison, LogReal, Real, DEFAULT_PRECISION,
};
pub use place::{Place, Prime};
pub use rational::{
    abs_at_place, int_valuation, log_plus, product_formula_check, rat_valuation, ProductFormula,
    Rational,
};
