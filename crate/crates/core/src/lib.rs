//! Exact arithmetic in the reduced ring of `RO(C₂)`-graded `C₂`-equivariant
//! stable stems.
//!
//! The ring is free abelian on [`ring::BasisElement`]s and multiplied by
//! closed-form structure constants. [`oracle`] recomputes every product
//! from the defining relations as a cross-check.
//!
//! ```
//! use c2stems::expr::evaluate;
//! use c2stems::ring::RingElement;
//!
//! assert_eq!(evaluate("eta^8 / 2^3").unwrap(), RingElement::x(8));
//! assert_eq!(evaluate("2 - rho*eta").unwrap().to_string(), "w[0]");
//! ```

pub mod cli;
pub mod divisibility;
pub mod expr;
pub mod grading;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod ring;
pub mod spectral;

pub use grading::Bidegree;
pub use report::{CheckItem, Report, Status};
pub use ring::{BasisElement, RingElement, RingModel};
