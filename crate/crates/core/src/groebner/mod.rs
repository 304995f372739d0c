//! Gröbner bases and ideal-theoretic primitives.

pub(crate) mod engine;
mod hilbert;
mod ideal;

pub use hilbert::HilbertData;
pub use ideal::Ideal;

use crate::rings::Polynomial;
use engine::{poly_to_vector, ModuleOrder, Vector};

/// Whether every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    let Some(first) = basis.first() else {
        return true;
    };
    let order = ModuleOrder::ideal(first.ring());
    let vecs: Vec<Vector> = basis.iter().map(|g| poly_to_vector(g, 0)).collect();
    engine::is_groebner_basis(&order, &vecs)
}
