//! Polynomials in one and two variables over Q.

mod bi;
mod height;
mod normalize;
mod parse;
mod print;
mod resultant;
mod roots;
mod uni;

pub use bi::BiPoly;
pub use height::{height_coeffs, height_poly, height_uni, norm_at_place};
pub use normalize::{k_normalize, NormalizationRecord};
pub use parse::{parse_bipoly, parse_unipoly};
pub use resultant::{
    bareiss_det, discriminant_w, integer_normalize, is_w_separable, resultant_w,
    resultant_with_derivative, squarefree_part_w,
};
pub use roots::{complex_roots, eval_c, squarefree_roots, RootApprox};
pub use uni::UniPoly;
pub(crate) use print::format_terms;
