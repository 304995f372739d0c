//! Exact graded commutative algebra: Gröbner bases, free resolutions,
//! Gorenstein liaison and Kustin–Miller type resolutions.

pub mod corpus;
pub mod error;
pub mod groebner;
pub mod homological;
pub mod kustin_miller;
pub mod liaison;
pub mod rings;

pub use error::{Error, Result};
pub use groebner::{HilbertData, Ideal};
pub use rings::{Field, Polynomial, PolyRing, Ring, RingExt};
