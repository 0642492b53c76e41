//! Adams spectral sequence bookkeeping: names of the non-nilpotent
//! generators and the `E_1^-` generators of the ρ-Bockstein spectral
//! sequence.

mod e1;
mod names;

pub use e1::{
    bockstein_degree, bundled_catalog, enumerate_e1_minus, load_catalog, parse_catalog,
    validate_e1_support, CatalogError, E1MinusClass, ExtCGenerator, Family, TauStatus, TriDegree,
    TriWindow, BUNDLED_CATALOG,
};
pub use names::{adams_name, AdamsName};
