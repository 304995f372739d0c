//! Exact coefficient fields, graded polynomial rings and their elements.

mod linalg;
mod monomial;
mod polynomial;
mod ring;
mod scalar;

pub use linalg::{delete_row_col, determinant, is_skew_symmetric, minors, pfaffian, pfaffians, solve_affine, solve_linear, submatrix, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{Homogeneity, Polynomial};
pub use ring::{PolyRing, Ring, RingExt};
pub use scalar::{Field, Scalar};
