//! Graded free modules, homogeneous matrices, chain complexes and free
//! resolutions.

mod betti;
mod complex;
mod matrix;
mod module;
mod resolve;

pub use betti::{BettiEntry, BettiTable};
pub use complex::{is_null_homotopy, lift_chain_map, mapping_cone, null_homotopy, ChainComplex, ChainMap};
pub use matrix::GradedMatrix;
pub use module::GradedFreeModule;
pub use resolve::{minimalize, resolve, verify_resolution, ResolutionCheck};
pub(crate) use resolve::cancel_unit;

/// Alias of [`GradedMatrix::kernel`].
pub fn syzygies(m: &GradedMatrix) -> GradedMatrix {
    m.kernel()
}

/// Alias of [`GradedMatrix::lift`].
pub fn matrix_lift(a: &GradedMatrix, b: &GradedMatrix) -> crate::Result<GradedMatrix> {
    a.lift(b)
}
