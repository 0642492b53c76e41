//! Closed-form structure constants.
//!
//! Products of basis elements, with `n` and `b = i - n` the divisibility
//! exponents:
//!
//! | product              | value                                             |
//! |----------------------|---------------------------------------------------|
//! | `ρ^i · ρ^j`          | `ρ^{i+j}`                                         |
//! | `ω_n · ω_m`          | `2·ω_{n+m}`                                       |
//! | `ω_n · ρ^i`, `ω_n · x_i` | `0`                                           |
//! | `x_i · x_j`          | `2^{n(i+j)-n(i)-n(j)} · x_{i+j}`                  |
//! | `ρ^a · x_j`, `a < j` | `2^{a+n(j-a)-n(j)} · x_{j-a}`                     |
//! | `ρ^j · x_j`          | `2^{b(j)-1} · (2 - ω_0)`                          |
//! | `ρ^a · x_j`, `a > j` | `2^{b(j)} · ρ^{a-j}`                              |
//!
//! All exponents are nonnegative exactly when `n` is superadditive and
//! `n(j) - n(j-1) ∈ {0,1}`; a table that breaks this yields
//! [`RingError::NegativeExponent`] rather than a wrong answer.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::basis::BasisElement;
use super::element::{Coefficient, LinearCombination, RingElement};
use crate::divisibility::{check_table_invariants, NTable, Standard};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("structure constant for {product} has negative 2-exponent {exponent}")]
    NegativeExponent { product: String, exponent: i64 },
    #[error("n-table violates a required invariant: {0}")]
    InvalidTable(String),
    #[error("index overflow in {0}")]
    IndexOverflow(String),
}

/// Bound used when validating a table at construction time.
pub const TABLE_VALIDATION_BOUND: u32 = 200;

static STANDARD: Standard = Standard;

/// The multiplication of the reduced ring, parametrized by the `n` table.
#[derive(Debug, Clone, Copy)]
pub struct RingModel<'a> {
    table: &'a dyn NTable,
}

impl RingModel<'static> {
    pub fn standard() -> Self {
        RingModel { table: &STANDARD }
    }
}

impl<'a> RingModel<'a> {
    /// Builds a model after checking the table's step bound,
    /// superadditivity, and positivity of `b` up to
    /// [`TABLE_VALIDATION_BOUND`].
    pub fn new(table: &'a dyn NTable) -> Result<Self, RingError> {
        let report = check_table_invariants(table, TABLE_VALIDATION_BOUND);
        if let Some(bad) = report.failures().next() {
            return Err(RingError::InvalidTable(format!(
                "{} {}",
                bad.name, bad.detail
            )));
        }
        Ok(RingModel { table })
    }

    /// Builds a model without validation. Products that would need a
    /// negative exponent return errors from the `try_` methods.
    pub fn unchecked(table: &'a dyn NTable) -> Self {
        RingModel { table }
    }

    pub fn table(&self) -> &'a dyn NTable {
        self.table
    }

    pub fn n(&self, i: u32) -> i64 {
        i64::from(self.table.n(i))
    }

    pub fn b(&self, i: u32) -> i64 {
        self.table.b(i)
    }

    pub fn try_mul_basis(
        &self,
        a: &BasisElement,
        b: &BasisElement,
    ) -> Result<RingElement, RingError> {
        use BasisElement::*;
        let two_pow = |exponent: i64, which: &dyn Fn() -> String| -> Result<BigInt, RingError> {
            if exponent < 0 {
                return Err(RingError::NegativeExponent {
                    product: which(),
                    exponent,
                });
            }
            Ok(BigInt::one() << exponent as u64)
        };
        let name = || format!("{a} * {b}");

        Ok(match (*a, *b) {
            (Unit, other) | (other, Unit) => RingElement::basis(other),
            (Omega(n), Omega(m)) => {
                let sum = n
                    .checked_add(m)
                    .ok_or_else(|| RingError::IndexOverflow(name()))?;
                RingElement::term(BigInt::from(2), Omega(sum))
            }
            (Omega(_), _) | (_, Omega(_)) => RingElement::zero(),
            (RhoPow(i), RhoPow(j)) => {
                let sum = i
                    .checked_add(j.get())
                    .ok_or_else(|| RingError::IndexOverflow(name()))?;
                RingElement::basis(RhoPow(sum))
            }
            (XClass(i), XClass(j)) => {
                let sum = i
                    .checked_add(j.get())
                    .ok_or_else(|| RingError::IndexOverflow(name()))?;
                let e = self.n(sum.get()) - self.n(i.get()) - self.n(j.get());
                RingElement::term(two_pow(e, &name)?, XClass(sum))
            }
            (RhoPow(a), XClass(j)) | (XClass(j), RhoPow(a)) => {
                let (a, j) = (a.get(), j.get());
                match a.cmp(&j) {
                    std::cmp::Ordering::Less => {
                        let e = i64::from(a) + self.n(j - a) - self.n(j);
                        RingElement::term(two_pow(e, &name)?, BasisElement::x(j - a))
                    }
                    std::cmp::Ordering::Equal => {
                        let c = two_pow(self.b(j) - 1, &name)?;
                        let mut out = RingElement::term(&c * 2, Unit);
                        out.add_term(Omega(0), -c);
                        out
                    }
                    std::cmp::Ordering::Greater => {
                        RingElement::term(two_pow(self.b(j), &name)?, BasisElement::rho_pow(a - j))
                    }
                }
            }
        })
    }

    /// Product of two basis elements.
    ///
    /// # Panics
    ///
    /// Only for models built with [`RingModel::unchecked`] whose table
    /// produces a negative exponent, or on index overflow.
    pub fn mul_basis(&self, a: &BasisElement, b: &BasisElement) -> RingElement {
        self.try_mul_basis(a, b)
            .unwrap_or_else(|e| panic!("internal error: {e}"))
    }

    pub fn try_mul<C: Coefficient>(
        &self,
        a: &LinearCombination<C>,
        b: &LinearCombination<C>,
    ) -> Result<LinearCombination<C>, RingError> {
        let mut out = LinearCombination::zero();
        for (ba, ca) in a.terms() {
            for (bb, cb) in b.terms() {
                let product = self.try_mul_basis(ba, bb)?;
                let scale = ca.clone() * cb.clone();
                for (basis, k) in product.terms() {
                    out.add_term(*basis, C::from(k.clone()) * scale.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn mul<C: Coefficient>(
        &self,
        a: &LinearCombination<C>,
        b: &LinearCombination<C>,
    ) -> LinearCombination<C> {
        self.try_mul(a, b)
            .unwrap_or_else(|e| panic!("internal error: {e}"))
    }

    pub fn try_pow<C: Coefficient>(
        &self,
        a: &LinearCombination<C>,
        mut exponent: u32,
    ) -> Result<LinearCombination<C>, RingError> {
        let mut result = LinearCombination::one();
        let mut base = a.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = self.try_mul(&result, &base)?;
            }
            exponent >>= 1;
            if exponent > 0 {
                base = self.try_mul(&base, &base)?;
            }
        }
        Ok(result)
    }

    pub fn pow<C: Coefficient>(
        &self,
        a: &LinearCombination<C>,
        exponent: u32,
    ) -> LinearCombination<C> {
        self.try_pow(a, exponent)
            .unwrap_or_else(|e| panic!("internal error: {e}"))
    }
}

/// Product of two basis elements in the standard model.
pub fn mul_basis(a: &BasisElement, b: &BasisElement) -> RingElement {
    RingModel::standard().mul_basis(a, b)
}

/// Bilinear product in the standard model.
pub fn mul(a: &RingElement, b: &RingElement) -> RingElement {
    RingModel::standard().mul(a, b)
}
