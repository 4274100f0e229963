//! Vacuum module and PBW normal ordering for the affine superalgebra.

mod engine;
mod lazy;
mod ops;
mod vacuum;

pub use engine::{Engine, Mode, VacuumModule};
pub use lazy::{LazyU, Letter, Word};
pub use ops::{
    apply, apply_scalar, f_matrix, letter_matrix, lift, on_vacuum, utensor_compose, utensor_supertrace, vacuum_image,
    UTensorOp, VacuumOp,
};
pub use vacuum::{Gen, Monomial, TauPolynomial, VacuumElement};
