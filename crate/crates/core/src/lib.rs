//! Exact toric combinatorics: lattices, fans, the Bondal–Ruan map, CW incidence
//! algebras and cotangent skeleta.

pub mod error;
pub mod lattice;
pub mod linalg;

pub use error::{Error, Result};
pub mod fan;
pub mod bondal_ruan;
pub mod incidence;
pub mod skeleton;
pub mod report;
pub mod svg;
