//! Arithmetic in a declared number field Q(θ), conjugate norms and heights.

mod fp;
mod fpoly;
mod newton;
mod norms;
mod number_field;
mod roots;

pub use fpoly::FPoly;
pub use newton::{hull_slopes, lower_convex_hull, newton_polygon_padic, NewtonPolygon};
pub use norms::{conjugate_norm_max, conjugate_norms, height_algnum, height_rational, mahler_height};
pub use number_field::{AlgNum, NumberField};
pub use roots::{roots_in_field, FieldRoots};
