use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::parser::Expr;
use crate::rational::RationalElement;
use crate::ring::{Coefficient, LinearCombination, RingElement, RingError, RingModel};

/// Upper bound on `terms(a) * terms(b)` for a single product.
pub const MAX_PRODUCT_WORK: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor {0} is not a scalar")]
    NonScalarDivisor(String),
    #[error("divisor {0} is not a positive power of 2 (integral mode)")]
    DivisorNotPowerOfTwo(String),
    #[error("{dividend} is not divisible by {divisor} in the ring")]
    InexactDivision { dividend: String, divisor: String },
    #[error("product of {0} and {1} terms is too large to expand")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Coefficient rings that know how to divide by a scalar.
pub trait Divide: Coefficient {
    fn divide(
        dividend: &LinearCombination<Self>,
        divisor: &Self,
    ) -> Result<LinearCombination<Self>, EvalError>;
}

impl Divide for BigInt {
    fn divide(dividend: &RingElement, divisor: &BigInt) -> Result<RingElement, EvalError> {
        if divisor.is_zero() {
            return Err(EvalError::DivisionByZero);
        }
        let is_power_of_two = divisor.is_positive() && (divisor & (divisor - 1u32)).is_zero();
        if !is_power_of_two {
            return Err(EvalError::DivisorNotPowerOfTwo(divisor.to_string()));
        }
        let mut out = RingElement::zero();
        for (b, c) in dividend.terms() {
            if !(c % divisor).is_zero() {
                return Err(EvalError::InexactDivision {
                    dividend: dividend.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            out.add_term(*b, c / divisor);
        }
        Ok(out)
    }
}

impl Divide for BigRational {
    fn divide(
        dividend: &RationalElement,
        divisor: &BigRational,
    ) -> Result<RationalElement, EvalError> {
        if divisor.is_zero() {
            return Err(EvalError::DivisionByZero);
        }
        Ok(dividend.scale(&divisor.recip()))
    }
}

/// Evaluates parsed expressions against a ring model.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator<'a> {
    model: RingModel<'a>,
}

impl Default for Evaluator<'static> {
    fn default() -> Self {
        Evaluator {
            model: RingModel::standard(),
        }
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(model: RingModel<'a>) -> Self {
        Evaluator { model }
    }

    pub fn integral(&self, e: &Expr) -> Result<RingElement, EvalError> {
        self.eval(e)
    }

    pub fn rational(&self, e: &Expr) -> Result<RationalElement, EvalError> {
        self.eval(e)
    }

    fn mul<C: Coefficient>(
        &self,
        a: &LinearCombination<C>,
        b: &LinearCombination<C>,
    ) -> Result<LinearCombination<C>, EvalError> {
        if a.len().saturating_mul(b.len()) > MAX_PRODUCT_WORK {
            return Err(EvalError::TooLarge(a.len(), b.len()));
        }
        Ok(self.model.try_mul(a, b)?)
    }

    fn pow<C: Coefficient>(
        &self,
        a: &LinearCombination<C>,
        mut exponent: u32,
    ) -> Result<LinearCombination<C>, EvalError> {
        let mut result = LinearCombination::one();
        let mut base = a.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            exponent >>= 1;
            if exponent > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(result)
    }

    fn eval<C: Divide>(&self, e: &Expr) -> Result<LinearCombination<C>, EvalError> {
        Ok(match e {
            Expr::Int(k) => LinearCombination::scalar(C::from(k.clone())),
            Expr::Generator(b) => LinearCombination::basis(*b),
            Expr::Neg(a) => -self.eval::<C>(a)?,
            Expr::Add(a, b) => self.eval::<C>(a)? + self.eval::<C>(b)?,
            Expr::Sub(a, b) => self.eval::<C>(a)? - self.eval::<C>(b)?,
            Expr::Mul(a, b) => self.mul(&self.eval::<C>(a)?, &self.eval::<C>(b)?)?,
            Expr::Pow(a, k) => self.pow(&self.eval::<C>(a)?, *k)?,
            Expr::Div(a, b) => {
                let dividend = self.eval::<C>(a)?;
                let divisor = self.eval::<C>(b)?;
                let scalar = divisor
                    .as_scalar()
                    .ok_or_else(|| EvalError::NonScalarDivisor(divisor.to_string()))?;
                C::divide(&dividend, &scalar)?
            }
        })
    }
}

/// Evaluates `e` in the standard model over `Z`.
pub fn eval(e: &Expr) -> Result<RingElement, EvalError> {
    Evaluator::default().integral(e)
}

/// Evaluates `e` in the standard model over `Q`.
pub fn eval_rational(e: &Expr) -> Result<RationalElement, EvalError> {
    Evaluator::default().rational(e)
}

/// `true` when every coefficient of `a` is an integer.
pub fn is_integral(a: &RationalElement) -> bool {
    a.terms().all(|(_, c)| c.denom().is_one())
}
