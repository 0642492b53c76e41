//! The two integer-valued characters and the Burnside-ring action.
//!
//! `phi_e` is the underlying map followed by projection to `π_0^s / torsion`;
//! `phi_fix` is the same for geometric fixed points. Both are ring
//! homomorphisms to `ℤ`, and together they detect every element.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::basis::BasisElement;
use super::element::{Coefficient, LinearCombination, RingElement};
use super::model::{RingError, RingModel};

/// Value of a character on an integral element.
pub type CharacterValue = BigInt;

fn underlying_on_basis(b: &BasisElement) -> BigInt {
    match b {
        BasisElement::Unit => BigInt::one(),
        BasisElement::Omega(_) => BigInt::from(2),
        BasisElement::RhoPow(_) | BasisElement::XClass(_) => BigInt::zero(),
    }
}

/// `phi_e`: 1 on the unit, 2 on every `ω_n`, 0 off stem 0.
pub fn char_underlying<C: Coefficient>(a: &LinearCombination<C>) -> C {
    a.terms().fold(C::zero(), |acc, (b, c)| {
        acc + C::from(underlying_on_basis(b)) * c.clone()
    })
}

impl RingModel<'_> {
    /// `phi_fix` on a basis element: 1 on units and ρ-powers, `2^{b(i)}` on
    /// `x_i`, 0 on every `ω_n`.
    pub fn try_char_fixed_basis(&self, b: &BasisElement) -> Result<BigInt, RingError> {
        Ok(match b {
            BasisElement::Unit | BasisElement::RhoPow(_) => BigInt::one(),
            BasisElement::Omega(_) => BigInt::zero(),
            BasisElement::XClass(i) => {
                let e = self.b(i.get());
                if e < 0 {
                    return Err(RingError::NegativeExponent {
                        product: format!("phi_fix({b})"),
                        exponent: e,
                    });
                }
                BigInt::one() << e as u64
            }
        })
    }

    pub fn try_char_fixed<C: Coefficient>(&self, a: &LinearCombination<C>) -> Result<C, RingError> {
        a.terms().try_fold(C::zero(), |acc, (b, c)| {
            Ok(acc + C::from(self.try_char_fixed_basis(b)?) * c.clone())
        })
    }

    pub fn char_fixed<C: Coefficient>(&self, a: &LinearCombination<C>) -> C {
        self.try_char_fixed(a)
            .unwrap_or_else(|e| panic!("internal error: {e}"))
    }
}

/// `phi_fix` with the standard table.
pub fn char_fixed<C: Coefficient>(a: &LinearCombination<C>) -> C {
    RingModel::standard().char_fixed(a)
}

/// The additive basis `{1, [C₂/e]}` of the Burnside ring `A(C₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BurnsideElement {
    One,
    FreeOrbit,
}

impl BurnsideElement {
    pub fn as_basis(self) -> BasisElement {
        match self {
            BurnsideElement::One => BasisElement::Unit,
            BurnsideElement::FreeOrbit => BasisElement::FREE_ORBIT,
        }
    }
}

/// Action of `A(C₂) = π_{0,0}` by multiplication.
pub fn burnside_act(g: BurnsideElement, a: &RingElement) -> RingElement {
    RingModel::standard().mul(&RingElement::basis(g.as_basis()), a)
}
