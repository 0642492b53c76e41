//! A small expression language for ring elements.
//!
//! `2 - rho*eta`, `eta^8 / 2^3`, `w[-1]*w[1]`, `x[7] + 3x[2]`.
//! Canonical output (the `Display` of [`RingElement`]) parses back to the
//! same element.

mod eval;
mod parser;

use thiserror::Error;

pub use eval::{eval, eval_rational, is_integral, Divide, EvalError, Evaluator, MAX_PRODUCT_WORK};
pub use parser::{parse, Expr, ParseError, MAX_EXPONENT, MAX_OMEGA_INDEX};

use crate::rational::RationalElement;
use crate::ring::RingElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Parses and evaluates over `Z` in the standard model.
pub fn evaluate(text: &str) -> Result<RingElement, ExprError> {
    Ok(eval(&parse(text)?)?)
}

/// Parses and evaluates over `Q` in the standard model.
pub fn evaluate_rational(text: &str) -> Result<RationalElement, ExprError> {
    Ok(eval_rational(&parse(text)?)?)
}

pub fn print_canonical(a: &RingElement) -> String {
    a.to_string()
}
