//! Exact torsion computations for elliptic curves over the rationals and
//! over multiquadratic extensions, together with the growth analysis of
//! torsion in quadratic fields.

pub mod curve;
pub mod error;
pub mod exact_fields;
pub mod growth;
pub mod torsion;

pub use error::{Error, Result};
