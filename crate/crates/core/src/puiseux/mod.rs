//! Power series and Puiseux expansions of algebraic functions at `z = 0`.

mod analysis;
mod branches;
mod lift;
mod series;

pub use analysis::{ord_z_of_series_composition, padic_sup_norm, OrdZ, TailBound};
pub use branches::puiseux_branches;
pub use lift::{expand_regular, residue_check};
pub use series::{BranchSet, PuiseuxSeries, UnrealizedBranch};
