//! Explicit Eisenstein divisors, the height inequalities they satisfy, and a harness that
//! checks the resulting coefficient bounds term by term.

mod certificate;
mod divisor;
mod exceptional;

pub use certificate::{
    global_divisor, verify_bounds, verify_conjectural, ConjecturalReport, EisensteinCertificate, Failure,
    VerificationReport,
};
pub use divisor::{
    a_prime_height_bound, c_factor, local_divisor, theorem_height_bound, DivisorInputs, DivisorMode, MDivisor, Variant,
};
pub use exceptional::{exceptional_set_bound, prime_sum_check, ExceptionalReport, PrimeSumReport};
