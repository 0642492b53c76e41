//! The reduced ring as a free abelian group on canonical basis elements,
//! with multiplication by closed-form structure constants.

mod basis;
mod characters;
mod checks;
mod element;
mod model;

pub use basis::BasisElement;
pub use characters::{burnside_act, char_fixed, char_underlying, BurnsideElement, CharacterValue};
pub use checks::{
    check_axioms, check_characters, check_presentation, find_generator_witness,
    is_ring_generator_index, Witness,
};
pub use element::{Coefficient, LinearCombination, RingElement};
pub use model::{mul, mul_basis, RingError, RingModel, TABLE_VALIDATION_BOUND};

/// `deg` of a basis element.
pub fn degree_of(b: &BasisElement) -> crate::grading::Bidegree {
    b.degree()
}
